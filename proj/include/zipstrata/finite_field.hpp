#pragma once

// Finite fields F_{p^d} with p in {2,3,5} and p^d <= 64, by exhaustive
// log/antilog tables over a pinned Conway polynomial, plus the small dense
// matrices used by the orbit oracle.
//
// An element is encoded as the integer sum c_i p^i of its coordinates in the
// polynomial basis 1, x, x^2, ... modulo the Conway polynomial. Subfields are
// the fixed points of the corresponding Frobenius power, so all tower levels
// live inside one table.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zipstrata::fq {

using Elt = std::uint8_t;

inline constexpr int kMaxFieldSize = 64;
inline constexpr int kMaxMatrixSize = 4;

class Field {
 public:
  /// Throws ConfigError for p outside {2,3,5}, p^degree > 64 or degree < 1.
  Field(int p, int degree);

  [[nodiscard]] int characteristic() const { return p_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return q_; }
  /// Coefficients of the monic modulus, constant term first.
  [[nodiscard]] const std::vector<int>& modulus() const { return modulus_; }

  [[nodiscard]] Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  [[nodiscard]] Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
  [[nodiscard]] Elt neg(Elt a) const { return neg_[a]; }
  [[nodiscard]] Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
  /// Throws std::domain_error on zero.
  [[nodiscard]] Elt inv(Elt a) const;
  [[nodiscard]] Elt pow(Elt a, long long e) const;
  /// a -> a^p.
  [[nodiscard]] Elt frobenius(Elt a) const { return frob_[a]; }
  [[nodiscard]] Elt from_int(long long v) const;

  /// Primitive element (the class of x).
  [[nodiscard]] Elt generator() const { return antilog_[static_cast<std::size_t>(1 % (q_ - 1))]; }
  [[nodiscard]] int log(Elt a) const { return log_[a]; }

  /// Elements of the subfield F_{p^sub}; sub must divide degree().
  [[nodiscard]] std::vector<Elt> subfield(int sub) const;
  [[nodiscard]] Elt subfield_generator(int sub) const;
  /// F_p-basis 1, g, ..., g^{sub-1} of the subfield, g its primitive element.
  [[nodiscard]] std::vector<Elt> subfield_basis(int sub) const;
  [[nodiscard]] bool in_subfield(Elt a, int sub) const;

  [[nodiscard]] std::string to_string(Elt a) const;

 private:
  int p_;
  int degree_;
  int q_;
  std::vector<int> modulus_;
  std::vector<Elt> add_, mul_, neg_, frob_, antilog_;
  std::vector<int> log_;
};

/// Pinned Conway polynomial for (p, degree), constant term first. Throws
/// ConfigError when the pair is outside the supported range.
std::vector<int> conway_polynomial(int p, int degree);

/// Dense n x n matrix over a Field, n <= 4, row-major.
struct Matrix {
  int n = 0;
  std::array<Elt, kMaxMatrixSize * kMaxMatrixSize> a{};

  [[nodiscard]] Elt at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  Elt& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }

  static Matrix identity(int n);
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix mat_mul(const Field& F, const Matrix& x, const Matrix& y);
Elt det(const Field& F, const Matrix& x);
std::optional<Matrix> mat_inverse(const Field& F, const Matrix& x);
/// Entrywise p-power map.
Matrix mat_frobenius(const Field& F, const Matrix& x);
/// Injective encoding; requires size^(n*n) < 2^64.
std::uint64_t mat_key(const Field& F, const Matrix& x);
std::string mat_to_string(const Field& F, const Matrix& x);
/// Rank of the given rows (each of length n).
int row_rank(const Field& F, std::vector<std::vector<Elt>> rows);

}  // namespace zipstrata::fq

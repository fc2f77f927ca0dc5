#pragma once

// Root systems and finite Weyl groups with exact integer arithmetic.
//
// A Weyl group element is stored by its permutation of the root indices.
// Composition convention: (a * b)(alpha) = a(b(alpha)), i.e. b acts first.
// Right descents of w are the simple s with w(alpha_s) < 0, left descents
// those with w^{-1}(alpha_s) < 0.
//
// Simple-reflection indices are 1-based everywhere in the public interface.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zipstrata {

enum class Family { A, B, C, D, G };

inline constexpr std::size_t kDefaultWeylCap = 10'000;

struct CartanDatum {
  Family family = Family::A;
  int rank = 1;
  /// a[i][j] with s_i(alpha_j) = alpha_j - a[i][j] alpha_i (0-based storage).
  std::vector<std::vector<int>> cartan_matrix;
  /// 1-based permutation of {1..rank}: entry i-1 holds sigma(i).
  std::vector<int> diagram_automorphism;

  /// Builds the Bourbaki-numbered datum and validates it. An empty
  /// automorphism means the identity (split case).
  static CartanDatum make(Family family, int rank, std::vector<int> automorphism = {});

  [[nodiscard]] std::string name() const;
  [[nodiscard]] bool split() const;
};

/// Throws ConfigError if the datum violates its invariants or falls outside
/// the supported list A1-A4, B2-B4, C2-C4, D3-D4, G2.
void validate(const CartanDatum& datum);

/// "A3", or "A3^tw" when the Frobenius is a non-trivial diagram automorphism.
std::string type_label(const CartanDatum& d);

/// Parses "A2", "c3", "G2". Throws ConfigError.
CartanDatum parse_cartan_type(std::string_view text, std::vector<int> automorphism = {});

/// The non-trivial diagram automorphism used for twisted runs: the flip of
/// A_n (n >= 2) and the swap of the two short legs of D_n. Empty for
/// families without one.
std::vector<int> standard_diagram_automorphism(Family family, int rank);

/// All supported (family, rank) pairs with rank <= rank_max, in a fixed order.
std::vector<CartanDatum> supported_types(int rank_max);

struct WeylElement {
  std::vector<std::uint8_t> root_permutation;
  std::uint16_t system_tag = 0;

  friend bool operator==(const WeylElement&, const WeylElement&) = default;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const noexcept;
};

class RootSystem {
 public:
  explicit RootSystem(CartanDatum datum);

  [[nodiscard]] const CartanDatum& datum() const { return datum_; }
  [[nodiscard]] int rank() const { return datum_.rank; }
  [[nodiscard]] std::uint16_t tag() const { return tag_; }

  /// Coordinates in the simple-root basis. Indices [0, N) are positive with
  /// index i-1 being alpha_i; index k + N is the negative of index k.
  [[nodiscard]] const std::vector<std::vector<int>>& roots() const { return roots_; }
  [[nodiscard]] std::size_t root_count() const { return roots_.size(); }
  [[nodiscard]] std::size_t positive_root_count() const { return roots_.size() / 2; }
  [[nodiscard]] bool is_positive(std::size_t root) const { return root < positive_root_count(); }
  [[nodiscard]] std::size_t simple_root_index(int i) const { return static_cast<std::size_t>(i - 1); }

  /// Permutation of root indices induced by s_i.
  [[nodiscard]] const std::vector<std::uint8_t>& simple_reflection_action(int i) const;

  [[nodiscard]] WeylElement identity() const;
  [[nodiscard]] WeylElement simple_reflection(int i) const;

  /// Permutation of root indices induced by the diagram automorphism.
  [[nodiscard]] const std::vector<std::uint8_t>& automorphism_action() const { return automorphism_action_; }

  /// Throws UsageError unless w belongs to this root system.
  void check_member(const WeylElement& w) const;

 private:
  CartanDatum datum_;
  std::uint16_t tag_ = 0;
  std::vector<std::vector<int>> roots_;
  std::vector<std::vector<std::uint8_t>> simple_actions_;
  std::vector<std::uint8_t> automorphism_action_;
};

RootSystem build_root_system(const CartanDatum& datum);

WeylElement multiply(const RootSystem& rs, const WeylElement& a, const WeylElement& b);
WeylElement inverse(const RootSystem& rs, const WeylElement& w);
int length(const RootSystem& rs, const WeylElement& w);
bool has_right_descent(const RootSystem& rs, const WeylElement& w, int i);
bool has_left_descent(const RootSystem& rs, const WeylElement& w, int i);
WeylElement longest_element(const RootSystem& rs);

/// Greedy extraction that always strips the smallest left descent, so the
/// returned word is the lexicographically smallest reduced word.
std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w);
WeylElement from_word(const RootSystem& rs, std::span<const int> word);

/// Descent recursion: for s with ws < w, u <= w iff min(u, us) <= ws.
bool bruhat_leq(const RootSystem& rs, const WeylElement& u, const WeylElement& w);

/// The automorphism of W induced by the diagram automorphism (s_i -> s_sigma(i)).
WeylElement apply_frobenius(const RootSystem& rs, const WeylElement& w);

/// All elements, each once, in breadth-first (non-decreasing length) order.
/// Throws ResourceError if |W| exceeds cap.
std::vector<WeylElement> enumerate(const RootSystem& rs, std::size_t cap = kDefaultWeylCap);

using ElemId = std::uint32_t;

/// Fully enumerated Weyl group with dense element ids and precomputed
/// multiplication, inverse, length, Frobenius and Bruhat tables. Immutable
/// after construction. Id 0 is the identity.
class WeylGroup {
 public:
  explicit WeylGroup(RootSystem rs, std::size_t cap = kDefaultWeylCap);

  [[nodiscard]] const RootSystem& root_system() const { return rs_; }
  [[nodiscard]] int rank() const { return rs_.rank(); }
  [[nodiscard]] std::size_t order() const { return elements_.size(); }

  [[nodiscard]] const WeylElement& element(ElemId id) const { return elements_[id]; }
  /// Throws UsageError for foreign elements.
  [[nodiscard]] ElemId id_of(const WeylElement& w) const;

  [[nodiscard]] ElemId identity() const { return 0; }
  [[nodiscard]] ElemId simple(int i) const { return simple_[static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] ElemId longest() const { return longest_; }

  [[nodiscard]] ElemId mul(ElemId a, ElemId b) const { return mul_[a * order() + b]; }
  [[nodiscard]] ElemId mul(ElemId a, ElemId b, ElemId c) const { return mul(mul(a, b), c); }
  [[nodiscard]] ElemId inverse(ElemId w) const { return inverse_[w]; }
  [[nodiscard]] int length(ElemId w) const { return length_[w]; }
  [[nodiscard]] ElemId frobenius(ElemId w) const { return frobenius_[w]; }

  [[nodiscard]] bool has_left_descent(ElemId w, int i) const;
  [[nodiscard]] bool has_right_descent(ElemId w, int i) const;

  [[nodiscard]] bool bruhat_leq(ElemId u, ElemId w) const { return bruhat_[u * order() + w] != 0; }

  [[nodiscard]] std::vector<int> reduced_word(ElemId w) const;
  [[nodiscard]] ElemId from_word(std::span<const int> word) const;

  /// "e" for the identity, otherwise "s1s2s1".
  [[nodiscard]] std::string word_string(ElemId w) const;

 private:
  RootSystem rs_;
  std::vector<WeylElement> elements_;
  std::unordered_map<WeylElement, ElemId, WeylElementHash> index_;
  std::vector<ElemId> simple_;
  ElemId longest_ = 0;
  std::vector<ElemId> mul_;
  std::vector<ElemId> inverse_;
  std::vector<int> length_;
  std::vector<ElemId> frobenius_;
  std::vector<std::uint8_t> bruhat_;
};

using WeylGroupPtr = std::shared_ptr<const WeylGroup>;

WeylGroupPtr make_weyl_group(const CartanDatum& datum, std::size_t cap = kDefaultWeylCap);

}  // namespace zipstrata

#pragma once

// Parabolic types I of Delta, standard parabolic subgroups W_I and minimal
// length coset representatives.
//
// Notation: ^I W holds the minimal representatives of the right cosets W_I w
// (no left descent in I); W^I those of the left cosets w W_I (no right descent
// in I). w_{I,0} is the longest element of W_I, w0^I the longest element of
// W^I, ^I w0 the longest element of ^I W.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zipstrata/root_weyl.hpp"

namespace zipstrata {

/// A subset of the simple reflections, stored as a bitmask (bit i-1 for s_i).
class TypeSubset {
 public:
  TypeSubset() = default;
  /// Throws ConfigError when an index lies outside {1..rank}.
  TypeSubset(int rank, const std::vector<int>& indices);

  static TypeSubset from_mask(int rank, std::uint32_t mask);
  static TypeSubset empty(int rank) { return from_mask(rank, 0); }
  static TypeSubset full(int rank) { return from_mask(rank, (1u << rank) - 1u); }

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] std::uint32_t mask() const { return mask_; }
  [[nodiscard]] bool contains(int i) const { return i >= 1 && i <= rank_ && ((mask_ >> (i - 1)) & 1u) != 0; }
  [[nodiscard]] std::vector<int> indices() const;
  [[nodiscard]] std::size_t size() const;
  /// "{1,3}" or "{}".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const TypeSubset&, const TypeSubset&) = default;

 private:
  int rank_ = 0;
  std::uint32_t mask_ = 0;
};

/// All 2^rank subsets in increasing mask order.
std::vector<TypeSubset> all_subsets(int rank);

/// Image of I under the diagram automorphism.
TypeSubset frobenius_type(const WeylGroup& g, const TypeSubset& I);

/// J with s_J = w0 s_I w0 elementwise.
TypeSubset opposite_type(const WeylGroup& g, const TypeSubset& I);

struct CosetSystem {
  TypeSubset I;
  std::vector<ElemId> w_I_elements;  // W_I, by increasing length
  std::vector<ElemId> left_reps;     // ^I W, by increasing length
  std::vector<ElemId> right_reps;    // W^I, by increasing length
  ElemId w_I0 = 0;
  ElemId w0_upper_I = 0;  // w0^I
  ElemId upper_I_w0 = 0;  // ^I w0
  ElemId w0 = 0;
  std::vector<bool> in_W_I;
  std::vector<bool> in_left;
  std::vector<bool> in_right;
};

/// Populates every field and checks |W_I| |^I W| = |W| together with
/// w_{I,0} ^I w0 = w0 = w0^I w_{I,0}; throws ConsistencyError on failure.
CosetSystem coset_system(const WeylGroup& g, const TypeSubset& I);

/// w = w_I * ^I w with lengths adding. Returns (w_I, ^I w).
std::pair<ElemId, ElemId> decompose_left(const WeylGroup& g, ElemId w, const TypeSubset& I);

/// w = w^I * w_I with lengths adding. Returns (w^I, w_I).
std::pair<ElemId, ElemId> decompose_right(const WeylGroup& g, ElemId w, const TypeSubset& I);

bool in_parabolic(const WeylGroup& g, ElemId w, const TypeSubset& I);
bool is_left_minimal(const WeylGroup& g, ElemId w, const TypeSubset& I);
bool is_right_minimal(const WeylGroup& g, ElemId w, const TypeSubset& I);

}  // namespace zipstrata

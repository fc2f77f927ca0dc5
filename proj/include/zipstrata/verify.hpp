#pragma once

// Exhaustive checks of the coset and zip-order combinatorics, per
// (Cartan type, I). Every check is computed, never assumed.

#include <cstddef>
#include <string>
#include <vector>

#include "zipstrata/parabolic.hpp"
#include "zipstrata/root_weyl.hpp"
#include "zipstrata/zip_poset.hpp"

namespace zipstrata {

/// Conjugation by w0 against the opposite type J = w0 I w0.
struct W0ConjugationCheck {
  bool types_conjugate = false;        // w0 s_i w0 runs over the simple reflections of J
  bool parabolic_conjugate = false;    // w0 W_I w0 = W_J, lengths preserved
  bool right_reps_conjugate = false;   // w0 W^I w0 = W^J, lengths preserved
  bool left_reps_conjugate = false;    // w0 ^I W w0 = ^J W, lengths preserved
  bool longest_conjugate = false;      // w_{I,0} = w0 w_{J,0} w0
  bool w0J_is_Iw0 = false;             // w0^J = ^I w0
  bool w0I_is_Jw0 = false;             // w0^I = ^J w0
  [[nodiscard]] bool ok() const {
    return types_conjugate && parabolic_conjugate && right_reps_conjugate && left_reps_conjugate &&
           longest_conjugate && w0J_is_Iw0 && w0I_is_Jw0;
  }
};
W0ConjugationCheck check_w0_conjugation(const WeylGroup& g, const TypeSubset& I);

/// The involutions w -> w0 w w_{I,0} on W^I and w -> w_{I,0} w w0 on ^I W:
/// bijective, l = l(w0^I) - l(w), Bruhat order reversing.
struct DualityInvolutionCheck {
  bool right_side = false;
  bool left_side = false;
  [[nodiscard]] bool ok() const { return right_side && left_side; }
};
DualityInvolutionCheck check_duality_involutions(const WeylGroup& g, const TypeSubset& I);

struct VerifyConfig {
  int rank_max = 3;
  bool include_twisted = false;  // also run the non-split diagram automorphisms
  std::vector<std::string> types;  // restrict to these names ("A2", ...); empty = all
  std::size_t weyl_cap = kDefaultWeylCap;
};

struct VerifyEntry {
  std::string type;  // e.g. "A3" or "A3^tw"
  TypeSubset I;
  TypeSubset J;      // opposite type
  std::size_t left_reps = 0;
  Sigma0Check sigma0;
  ReversalReport reversal;
  EquivalenceReport eo_dl_equivalence;
  W0ConjugationCheck w0_conjugation;
  DualityInvolutionCheck involutions;
  bool eo_partial_order = false;  // both sides
  bool dl_partial_order = false;
  EoTwistComparison z_comparison;

  /// Everything except the z comparison, which is a finding.
  [[nodiscard]] bool mandatory_ok() const {
    return sigma0.bijective && sigma0.length_formula && reversal.holds() && eo_dl_equivalence.holds() && w0_conjugation.ok() &&
           involutions.ok() && eo_partial_order && dl_partial_order;
  }
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  [[nodiscard]] bool all_ok() const;
  [[nodiscard]] std::size_t failures() const;
};

/// Throws ConfigError for unknown type names.
VerifyReport run_verify(const VerifyConfig& cfg);
VerifyEntry verify_one(const WeylGroupPtr& group, const TypeSubset& I);

}  // namespace zipstrata

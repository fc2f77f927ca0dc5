#pragma once

// Weyl-group combinatorics of algebraic zip data: the Levi isomorphism psi,
// the twisted order
//
//     w' <= w  iff  there is y in W_I with  y w' psi(y)^{-1} <= w  (Bruhat),
//
// the strata posets on ^I W and W^J, the bijection sigma : ^I W -> W^J and
// the duality sigma0 : ^I W -> ^J W, w -> w0^I w, with J = ^{w0} I.
//
// The order is evaluated by the literal quantifier over W_I against the
// precomputed Bruhat table of the WeylGroup.

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zipstrata/parabolic.hpp"
#include "zipstrata/root_weyl.hpp"

namespace zipstrata {

enum class Flavor { EO, DL, Custom };

/// Which twist element conjugates phi in the EO flavor.
///   PhiW0I  : psi(y) = t phi(y) t^{-1} with t = phi(w0^I). Maps W_I onto W_K.
///   FrameW0K: psi(y) = t phi(y) t^{-1} with t = w0^K, taken literally. In
///             general this does not map W_I into W_K; it exists to measure
///             the two readings against each other.
enum class EoTwist { PhiW0I, FrameW0K };

enum class Side { Left, Right };

std::string to_string(Flavor f);
std::string to_string(EoTwist t);
std::string to_string(Side s);

struct ZipDatum {
  WeylGroupPtr group;
  TypeSubset I;
  TypeSubset J;  // type of Q: phi(I) for DL, K = ^{w0} phi(I) for EO
  std::unordered_map<ElemId, ElemId> psi;  // defined on W_I
  ElemId frame_z = 0;  // orbit representatives are w~ z~^{-1}
  ElemId twist = 0;    // EO: psi(y) = twist phi(y) twist^{-1}; identity otherwise
  Flavor flavor = Flavor::DL;
  EoTwist eo_twist = EoTwist::PhiW0I;
  CosetSystem cosets_I;
  CosetSystem cosets_J;
  /// psi is a length preserving isomorphism W_I -> W_J with psi(I) = J.
  bool psi_is_isomorphism = false;

  [[nodiscard]] ElemId apply_psi(ElemId y) const { return psi.at(y); }
};

/// Frobenius-induced zip datum of the given flavor (not Custom). The EO
/// datum built with EoTwist::FrameW0K may have psi_is_isomorphism == false.
ZipDatum make_zip_datum(WeylGroupPtr group, const TypeSubset& I, Flavor flavor, EoTwist twist = EoTwist::PhiW0I);

/// User-supplied psi. Throws ConfigError unless psi is a length preserving
/// group isomorphism W_I -> W_J sending the simple reflections of I onto
/// those of J.
ZipDatum make_custom_zip_datum(WeylGroupPtr group, const TypeSubset& I, const TypeSubset& J,
                               std::unordered_map<ElemId, ElemId> psi, ElemId frame_z = 0);

/// Empty string when psi is an isomorphism with psi(I) = J, otherwise the reason.
std::string psi_defect(const WeylGroup& g, const CosetSystem& I, const CosetSystem& J,
                       const std::unordered_map<ElemId, ElemId>& psi);

bool twisted_leq(const ZipDatum& d, ElemId wp, ElemId w);

struct StrataPoset {
  std::vector<ElemId> labels;  // sorted by length, then reduced word
  std::vector<int> dim;        // dim[i] = length(labels[i])
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (lower, upper) positions

  [[nodiscard]] std::size_t size() const { return labels.size(); }
  [[nodiscard]] std::size_t position(ElemId w) const;
};

/// Labels sorted by (length, reduced word) for deterministic output.
std::vector<ElemId> sorted_labels(const WeylGroup& g, std::vector<ElemId> labels);

/// Full relation matrix of the twisted order on the given labels.
std::vector<std::vector<bool>> twisted_order_matrix(const ZipDatum& d, const std::vector<ElemId>& labels);

struct PartialOrderCheck {
  bool reflexive = true;
  bool antisymmetric = true;
  bool transitive = true;
  std::string first_violation;
  [[nodiscard]] bool ok() const { return reflexive && antisymmetric && transitive; }
};

PartialOrderCheck check_partial_order(const std::vector<std::vector<bool>>& leq);

/// Throws ConsistencyError when the twisted order fails the partial order
/// axioms or has no unique maximal element.
StrataPoset strata_poset(const ZipDatum& d, Side side = Side::Left);

/// Transitive reduction of leq (diagonal ignored).
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<std::vector<bool>>& leq);
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const StrataPoset& p);

/// The unique element of W^J of length l(w) among { y w psi(y)^{-1} : y in W_I }.
/// Throws ConsistencyError (with a dump of the candidates) otherwise.
ElemId sigma(const ZipDatum& d, ElemId w);

struct Sigma0Map {
  TypeSubset I;
  TypeSubset J;  // opposite type
  ElemId multiplier = 0;  // w0^I
  std::vector<std::pair<ElemId, ElemId>> pairs;  // (w, w0^I w) for w in ^I W
  std::unordered_map<ElemId, ElemId> forward;
};

Sigma0Map sigma0(const WeylGroup& g, const TypeSubset& I);

struct Sigma0Check {
  bool bijective = false;       // image set equals ^J W, no collisions
  bool length_formula = false;  // l(sigma0 w) = l(w0^J) - l(w)
};

Sigma0Check check_sigma0(const WeylGroup& g, const TypeSubset& I);

struct EquivalenceReport {
  TypeSubset I_plus;
  TypeSubset I_minus;
  std::size_t pairs_checked = 0;
  /// (w', w) with w' in ^{I+}W, w in ^{I-}W where the two sides disagree.
  std::vector<std::pair<ElemId, ElemId>> counterexamples;
  [[nodiscard]] bool holds() const { return counterexamples.empty(); }
};

/// For all w' in ^{I+}W and w in ^{I-}W compares  w <=_DL sigma0(w')  with
/// w' <=_EO sigma0(w). EO datum on I+, DL datum on I- = ^{w0} I+.
EquivalenceReport eo_dl_equivalence(WeylGroupPtr group, const TypeSubset& I_plus,
                                     EoTwist twist = EoTwist::PhiW0I);

struct ReversalReport {
  std::size_t comparable_pairs = 0;
  std::vector<std::pair<ElemId, ElemId>> counterexamples;  // (u, v) with u <=_EO v but not sigma0 v <=_DL sigma0 u
  [[nodiscard]] bool holds() const { return counterexamples.empty(); }
};

/// u <=_EO v on ^I W implies sigma0(v) <=_DL sigma0(u) on ^J W.
ReversalReport sigma0_order_reversal(WeylGroupPtr group, const TypeSubset& I, EoTwist twist = EoTwist::PhiW0I);

struct EoTwistComparison {
  TypeSubset I;
  bool orders_coincide = false;
  std::size_t differing_pairs = 0;
  bool phi_w0I_is_partial_order = false;
  bool frame_w0K_is_partial_order = false;
  bool frame_w0K_psi_is_isomorphism = false;
  bool twists_equal = false;  // phi(w0^I) == w0^K as elements
};

/// Measures whether the two EO twist readings induce the same order on ^I W.
EoTwistComparison compare_eo_twists(WeylGroupPtr group, const TypeSubset& I);

}  // namespace zipstrata

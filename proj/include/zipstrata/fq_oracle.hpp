#pragma once

// Brute-force realisation of zip data on GL_n / SL_n over finite fields.
//
// A weakly decreasing cocharacter weight vector a defines
//   P   = { g : g_ij = 0 whenever a_i < a_j }   (block upper, contains B)
//   P_- = { g : g_ij = 0 whenever a_i > a_j }
//   L   = P cap P_-  (block diagonal), with projection pi onto the blocks.
// The EO datum takes Q = P_-^{(p)} = P_-, the DL datum Q = P^{(p)} = P, and
//   E = { (x, y) in P x Q : phi(pi(x)) = pi(y) }  acting by  (x, y).g = x g y^{-1},
// where phi raises entries to the p-th power. H is defined over F_p and all
// points are taken over F_{q^m}, q = p^degree, inside one field table.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <string>
#include <utility>
#include <vector>

#include "zipstrata/finite_field.hpp"
#include "zipstrata/parabolic.hpp"
#include "zipstrata/root_weyl.hpp"
#include "zipstrata/zip_poset.hpp"

namespace zipstrata::fq {

enum class GroupFamily { GL, SL };

inline constexpr std::size_t kDefaultGroupCap = 200'000;

std::string to_string(GroupFamily f);

struct FqGroupSpec {
  GroupFamily family = GroupFamily::GL;
  int n = 2;
  int p = 2;
  int degree = 1;  // q = p^degree
  std::vector<int> weights;

  [[nodiscard]] int q() const;
  /// Type of P: the i with a_i == a_{i+1}.
  [[nodiscard]] TypeSubset type() const;
  /// The cocharacter ^{w0} chi^{-1}: weights reversed and negated.
  [[nodiscard]] FqGroupSpec opposite() const;
  /// Throws ConfigError.
  void validate() const;
};

/// |GL_n(F_Q)| or |SL_n(F_Q)|.
std::uint64_t group_order(GroupFamily family, int n, std::uint64_t Q);

/// Number of F_Q-points of P_-\H (Gaussian multinomial in Q).
std::uint64_t flag_variety_order(const FqGroupSpec& spec, std::uint64_t Q);

struct OrbitTable {
  int level = 1;                     // points over F_{q^level}
  std::vector<Matrix> elements;      // H(F_{q^level})
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::vector<std::uint32_t>> orbits;  // element indices, ordered by smallest member
  std::vector<std::size_t> sizes;
  std::map<ElemId, std::uint32_t> representative_labels;  // w in ^I W -> orbit of w~ z~^{-1}
  std::vector<std::uint32_t> merged_geometric;  // per orbit: class after field-extension merging
  std::uint64_t zip_group_order = 0;
};

enum class OrbitMethod { Auto, Generators, FullEnumeration };

struct MergeReport {
  Flavor flavor = Flavor::EO;
  std::vector<int> levels;
  std::vector<std::size_t> counts;  // classes of H(F_{q^levels[0]}) under E(F_{q^level})
  std::size_t rational_orbits_base = 0;  // E(F_{q^levels[0]})-orbits on H(F_{q^levels[0]})
  std::size_t merged_count = 0;          // counts.back()
  std::size_t expected = 0;              // |^I W|
  bool stable = false;                   // equal counts at the last two levels
  bool representatives_distinct = false;
  bool representatives_cover = false;    // every top-level orbit met by H(F_q) holds a representative
  OrbitTable base;

  /// "stable" or "inconclusive".
  [[nodiscard]] std::string verdict() const { return stable ? "stable" : "inconclusive"; }
  [[nodiscard]] bool bijection_confirmed() const {
    return stable && merged_count == expected && representatives_distinct && representatives_cover;
  }
};

struct DlStrataCounts {
  int extension = 1;
  std::uint64_t field_size = 0;  // q^m
  TypeSubset I_minus;
  std::map<ElemId, std::uint64_t> counts;  // every label of ^{I-}W, zero included
  std::uint64_t total = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t expected_total = 0;  // q-analog flag-variety count

  [[nodiscard]] bool conclusive() const { return unresolved == 0 && total == expected_total; }
};

struct OracleCaps {
  std::size_t group = kDefaultGroupCap;      // |H(F)| for enumeration
  std::size_t full_enumeration = 20'000'000; // |H(F)| |E(F)| below which Auto cross-checks with all of E
  std::size_t flags = 300'000;               // |P_-\H(F)|
};

/// Sorts elements of H(F_{q^m}) into the E-orbits of the DL datum of the
/// opposite type I_-, labelled by ^{I-}W. A label is settled when the
/// P x P double coset (rank profile of lower-left blocks) holds a single
/// label, otherwise by a search for l in L(F_{q^m}) with
/// l^{-1} x phi(l) in U r_w V. Build with FqOracle::dl_labeller; it refers
/// to the oracle's field and must not outlive the oracle.
class DlLabeller {
 public:
  [[nodiscard]] const std::vector<ElemId>& labels() const { return labels_; }
  [[nodiscard]] const TypeSubset& I_minus() const { return I_minus_; }
  /// y~^{-1} h phi(h)^{-1} z~ with y = ^I w0 and z = phi(y).
  [[nodiscard]] Matrix translate(const Matrix& h) const;
  /// std::nullopt when neither test settles the orbit.
  [[nodiscard]] std::optional<ElemId> label(const Matrix& x) const;

 private:
  friend class FqOracle;
  [[nodiscard]] std::vector<int> rank_profile(const Matrix& x) const;
  [[nodiscard]] bool in_cell(std::size_t k, const Matrix& x) const;

  const Field* field_ = nullptr;
  int n_ = 0;
  TypeSubset I_minus_;
  Matrix y_inv_, z_;
  std::vector<ElemId> labels_;
  std::vector<Matrix> reps_inv_;
  std::vector<std::vector<int>> rep_profiles_;
  std::vector<int> sizes_;
  std::vector<bool> rad_pat_;
  std::vector<Matrix> unip_inv_;
  std::vector<std::pair<Matrix, Matrix>> twisted_levi_;  // (l^{-1}, phi(l))
  bool hashed_ = false;
  std::vector<std::unordered_set<std::uint64_t>> cells_;  // U r_w V when small enough
};

/// The oracle for one group spec. The working field is F_{q^top_level}; every
/// level used afterwards must divide top_level.
class FqOracle {
 public:
  FqOracle(FqGroupSpec spec, int top_level, OracleCaps caps = {});

  [[nodiscard]] const FqGroupSpec& spec() const { return spec_; }
  [[nodiscard]] const Field& field() const { return field_; }
  [[nodiscard]] const WeylGroupPtr& weyl_group() const { return weyl_; }
  [[nodiscard]] int top_level() const { return top_level_; }

  /// All of H(F_{q^m}). Throws ResourceError above the group cap.
  [[nodiscard]] std::vector<Matrix> enumerate_group(int m) const;

  /// All of E(F_{q^m}). Throws ResourceError above the group cap.
  [[nodiscard]] std::vector<std::pair<Matrix, Matrix>> zip_group(Flavor flavor, int m) const;
  /// Generating pairs: root-subgroup pairs of both unipotent radicals and
  /// Levi-matched pairs (l, phi(l)) for l in generators of L(F_{q^m}).
  [[nodiscard]] std::vector<std::pair<Matrix, Matrix>> zip_group_generators(Flavor flavor, int m) const;
  [[nodiscard]] std::uint64_t zip_group_order(int m) const;

  [[nodiscard]] OrbitTable orbit_partition(Flavor flavor, int m, OrbitMethod method = OrbitMethod::Auto) const;

  /// Sorts the points of H(F_{q^levels[0]}) into E(F_{q^m})-orbits for every
  /// listed level m. Levels ascending, each dividing the next; last == top_level.
  [[nodiscard]] MergeReport geometric_merge(Flavor flavor, const std::vector<int>& levels) const;

  /// Permutation matrix (GL, or any family in characteristic 2) or Tits
  /// lift with entries 0, +-1 (SL, odd characteristic), built from a reduced word.
  [[nodiscard]] Matrix weyl_representative_matrix(ElemId w) const;
  /// w~ z~^{-1} with z the frame of the flavor (w0^K for EO, e for DL).
  [[nodiscard]] Matrix orbit_representative(Flavor flavor, ElemId w) const;
  [[nodiscard]] ZipDatum zip_datum(Flavor flavor) const;

  /// h phi(h)^{-1}.
  [[nodiscard]] Matrix lang_map(const Matrix& h) const;

  /// Representatives of P_-\H(F_{q^m}), one matrix per coset.
  [[nodiscard]] std::vector<Matrix> flag_representatives(int m) const;

  [[nodiscard]] DlLabeller dl_labeller(int m) const;
  /// Fine DL strata point counts on P_-\H over F_{q^m}: each coset P_- h is
  /// translated and labelled by DlLabeller. Cosets left unlabelled are
  /// counted as unresolved.
  [[nodiscard]] DlStrataCounts dl_strata_counts(int m) const;

  [[nodiscard]] bool in_P(const Matrix& x) const;
  [[nodiscard]] bool in_Q(Flavor flavor, const Matrix& x) const;
  [[nodiscard]] Matrix levi_part(const Matrix& x) const;

 private:
  [[nodiscard]] int abs_degree(int m) const;
  [[nodiscard]] std::vector<Elt> level_elements(int m) const;
  [[nodiscard]] bool in_family(const Matrix& x) const;
  [[nodiscard]] std::vector<Matrix> matrices_with_pattern(int m, const std::vector<bool>& allowed, bool invertible,
                                                          std::size_t cap) const;
  [[nodiscard]] std::vector<bool> pattern_P() const;
  [[nodiscard]] std::vector<bool> pattern_P_minus() const;
  [[nodiscard]] std::vector<bool> pattern_levi() const;
  [[nodiscard]] std::vector<bool> pattern_Q(Flavor flavor) const;

  FqGroupSpec spec_;
  int top_level_;
  OracleCaps caps_;
  Field field_;
  WeylGroupPtr weyl_;
};

/// Exact test that integer data c(Q) at the given Q values agree with a
/// polynomial of degree exactly `degree` (interpolated from the first
/// degree+1 points and checked on the rest). Needs > degree+1 points.
bool polynomial_consistent(const std::vector<std::pair<std::int64_t, std::int64_t>>& samples, int degree);

}  // namespace zipstrata::fq

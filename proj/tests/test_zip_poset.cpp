#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/zip_poset.hpp"

using namespace zipstrata;

namespace {

struct Case {
  CartanDatum datum;
};

std::vector<CartanDatum> data_up_to(int rank_max) {
  std::vector<CartanDatum> out;
  for (const auto& d : supported_types(rank_max)) {
    out.push_back(d);
    const auto aut = standard_diagram_automorphism(d.family, d.rank);
    if (!aut.empty()) out.push_back(CartanDatum::make(d.family, d.rank, aut));
  }
  return out;
}

ElemId longest_in(const WeylGroup& g, const std::set<ElemId>& s) {
  ElemId best = *s.begin();
  for (ElemId w : s)
    if (g.length(w) > g.length(best)) best = w;
  return best;
}

// psi for the two flavors, built from the group tables and the brute-force
// coset oracle only.
std::function<ElemId(ElemId)> oracle_psi(const WeylGroup& g, const TypeSubset& I, Flavor f) {
  if (f == Flavor::DL) return [&g](ElemId y) { return g.frobenius(y); };
  const ElemId w0I = longest_in(g, oracle::right_minimal_by_cosets(g, I.indices()));
  const ElemId t = g.frobenius(w0I);
  return [&g, t](ElemId y) { return g.mul(t, g.frobenius(y), g.inverse(t)); };
}

std::vector<std::vector<bool>> oracle_order(const WeylGroup& g, const TypeSubset& I, Flavor f,
                                            const std::vector<ElemId>& labels,
                                            const std::vector<std::vector<bool>>& bruhat) {
  const auto WI = oracle::parabolic(g, I.indices());
  const auto psi = oracle_psi(g, I, f);
  std::vector<std::vector<bool>> m(labels.size(), std::vector<bool>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j)
      m[i][j] = oracle::twisted_leq(g, WI, psi, bruhat, labels[i], labels[j]);
  return m;
}

}  // namespace

TEST(ZipDatum, TypesOfQ) {
  const auto g = make_weyl_group(parse_cartan_type("A3", {3, 2, 1}));
  const TypeSubset I(3, {1});
  const auto dl = make_zip_datum(g, I, Flavor::DL);
  EXPECT_EQ(dl.J, TypeSubset(3, {3}));  // phi(I)
  const auto eo = make_zip_datum(g, I, Flavor::EO);
  EXPECT_EQ(eo.J, TypeSubset(3, {1}));  // w0 phi(I) w0
  EXPECT_TRUE(dl.psi_is_isomorphism);
  EXPECT_TRUE(eo.psi_is_isomorphism);
  EXPECT_EQ(eo.frame_z, eo.cosets_J.w0_upper_I);
}

TEST(ZipDatum, PsiIsLengthPreservingIsomorphism) {
  for (const auto& d : data_up_to(4)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank))
      for (Flavor f : {Flavor::EO, Flavor::DL}) {
        const auto z = make_zip_datum(g, I, f);
        ASSERT_TRUE(z.psi_is_isomorphism) << d.name() << I.to_string();
        const auto WJ = oracle::parabolic(*g, z.J.indices());
        std::set<ElemId> image;
        for (ElemId y : z.cosets_I.w_I_elements) {
          const ElemId p = z.apply_psi(y);
          EXPECT_EQ(g->length(p), g->length(y));
          image.insert(p);
          for (ElemId y2 : z.cosets_I.w_I_elements)
            EXPECT_EQ(z.apply_psi(g->mul(y, y2)), g->mul(p, z.apply_psi(y2)));
        }
        EXPECT_EQ(image, WJ);
      }
  }
}

class TwistedOrderOracle : public ::testing::TestWithParam<int> {};

TEST_P(TwistedOrderOracle, MatchesLiteralDefinition) {
  const auto all = data_up_to(3);
  const auto& d = all[static_cast<std::size_t>(GetParam())];
  const auto g = make_weyl_group(d);
  const auto bruhat = oracle::bruhat_by_subwords(*g);
  for (const auto& I : all_subsets(d.rank))
    for (Flavor f : {Flavor::EO, Flavor::DL}) {
      const auto z = make_zip_datum(g, I, f);
      for (Side side : {Side::Left, Side::Right}) {
        const auto p = strata_poset(z, side);
        EXPECT_EQ(p.leq, oracle_order(*g, I, f, p.labels, bruhat)) << type_label(d) << I.to_string() << to_string(f);
      }
    }
}

INSTANTIATE_TEST_SUITE_P(RankUpTo3, TwistedOrderOracle, ::testing::Range(0, static_cast<int>(data_up_to(3).size())));

TEST(StrataPoset, C2SiegelIsAChain) {
  const auto g = make_weyl_group(parse_cartan_type("C2"));
  const auto p = strata_poset(make_zip_datum(g, TypeSubset(2, {1}), Flavor::EO));
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.hasse.size(), 3u);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(p.leq[i][j], i <= j);
}

TEST(StrataPoset, BorelDLIsBruhat) {
  for (const std::string t : {"A2", "B3", "G2"}) {
    const auto g = make_weyl_group(parse_cartan_type(t));
    const auto p = strata_poset(make_zip_datum(g, TypeSubset::empty(g->rank()), Flavor::DL));
    EXPECT_EQ(p.size(), g->order());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(p.leq[i][j], g->bruhat_leq(p.labels[i], p.labels[j]));
  }
}

TEST(StrataPoset, ShapeInvariants) {
  for (const auto& d : data_up_to(4)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank))
      for (Flavor f : {Flavor::EO, Flavor::DL})
        for (Side side : {Side::Left, Side::Right}) {
          const auto p = strata_poset(make_zip_datum(g, I, f), side);
          EXPECT_TRUE(check_partial_order(p.leq).ok());
          // Sorted by length; the unique maximum is last and the identity first.
          EXPECT_EQ(p.labels.front(), g->identity());
          for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LE(p.dim[i - 1], p.dim[i]);
          for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_TRUE(p.leq[i][p.size() - 1]);
            EXPECT_TRUE(p.leq[0][i]);
            EXPECT_EQ(p.dim[i], g->length(p.labels[i]));
          }
          // Hasse edges are exactly the covers.
          std::set<std::pair<std::size_t, std::size_t>> covers;
          for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) {
              if (a == b || !p.leq[a][b]) continue;
              bool between = false;
              for (std::size_t c = 0; c < p.size() && !between; ++c)
                between = c != a && c != b && p.leq[a][c] && p.leq[c][b];
              if (!between) covers.insert({a, b});
            }
          using Edges = std::set<std::pair<std::size_t, std::size_t>>;
          EXPECT_EQ(Edges(p.hasse.begin(), p.hasse.end()), covers);
        }
  }
}

TEST(StrataPoset, OrderImpliesDimensionInequality) {
  for (const auto& d : data_up_to(3)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank)) {
      const auto p = strata_poset(make_zip_datum(g, I, Flavor::EO));
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (i != j && p.leq[i][j]) EXPECT_LT(p.dim[i], p.dim[j]);
    }
  }
}

TEST(PartialOrder, DetectsViolations) {
  EXPECT_TRUE(check_partial_order({{true, true}, {false, true}}).ok());
  auto sym = check_partial_order({{true, true}, {true, true}});
  EXPECT_FALSE(sym.antisymmetric);
  auto nontrans = check_partial_order({{true, true, false}, {false, true, true}, {false, false, true}});
  EXPECT_FALSE(nontrans.transitive);
  EXPECT_FALSE(nontrans.first_violation.empty());
  EXPECT_FALSE(check_partial_order({{false}}).reflexive);
}

TEST(Sigma, BijectionOntoRightRepresentatives) {
  for (const auto& d : data_up_to(4)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank))
      for (Flavor f : {Flavor::EO, Flavor::DL}) {
        const auto z = make_zip_datum(g, I, f);
        std::set<ElemId> image;
        for (ElemId w : z.cosets_I.left_reps) {
          const ElemId s = sigma(z, w);
          EXPECT_EQ(g->length(s), g->length(w));
          EXPECT_TRUE(z.cosets_J.in_right[s]);
          image.insert(s);
        }
        EXPECT_EQ(image, std::set<ElemId>(z.cosets_J.right_reps.begin(), z.cosets_J.right_reps.end()));
      }
  }
}

TEST(Sigma0, BijectionAndLengthFormulaAgainstOracle) {
  for (const auto& d : supported_types(4)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank)) {
      const auto J = opposite_type(*g, I);
      const auto left_I = oracle::left_minimal_by_cosets(*g, I.indices());
      const auto left_J = oracle::left_minimal_by_cosets(*g, J.indices());
      const ElemId w0I = longest_in(*g, oracle::right_minimal_by_cosets(*g, I.indices()));
      const ElemId w0J = longest_in(*g, oracle::right_minimal_by_cosets(*g, J.indices()));
      std::set<ElemId> image;
      for (ElemId w : left_I) {
        image.insert(g->mul(w0I, w));
        EXPECT_EQ(g->length(g->mul(w0I, w)), g->length(w0J) - g->length(w));
      }
      EXPECT_EQ(image, left_J);
      const auto m = sigma0(*g, I);
      EXPECT_EQ(m.multiplier, w0I);
      for (const auto& [w, s] : m.pairs) EXPECT_EQ(s, g->mul(w0I, w));
      const auto c = check_sigma0(*g, I);
      EXPECT_TRUE(c.bijective);
      EXPECT_TRUE(c.length_formula);
    }
  }
}

// Main equivalence recomputed from the literal orders of the oracle.
TEST(EoDlEquivalence, EquivalenceAgainstOracleOrders) {
  for (const auto& d : data_up_to(3)) {
    const auto g = make_weyl_group(d);
    const auto bruhat = oracle::bruhat_by_subwords(*g);
    for (const auto& Ip : all_subsets(d.rank)) {
      const auto Im = opposite_type(*g, Ip);
      const ElemId y = longest_in(*g, oracle::right_minimal_by_cosets(*g, Ip.indices()));  // w0^{I+}
      const ElemId y_minus = longest_in(*g, oracle::right_minimal_by_cosets(*g, Im.indices()));
      const auto left_p = oracle::left_minimal_by_cosets(*g, Ip.indices());
      const auto left_m = oracle::left_minimal_by_cosets(*g, Im.indices());
      const auto W_p = oracle::parabolic(*g, Ip.indices());
      const auto W_m = oracle::parabolic(*g, Im.indices());
      const auto psi_eo = oracle_psi(*g, Ip, Flavor::EO);
      const auto psi_dl = oracle_psi(*g, Im, Flavor::DL);
      std::size_t pairs = 0;
      for (ElemId wp : left_p)
        for (ElemId w : left_m) {
          const bool dl = oracle::twisted_leq(*g, W_m, psi_dl, bruhat, w, g->mul(y, wp));
          const bool eo = oracle::twisted_leq(*g, W_p, psi_eo, bruhat, wp, g->mul(y_minus, w));
          EXPECT_EQ(dl, eo) << type_label(d) << " I+=" << Ip.to_string();
          ++pairs;
        }
      const auto r = eo_dl_equivalence(g, Ip);
      EXPECT_TRUE(r.holds());
      EXPECT_EQ(r.pairs_checked, pairs);
    }
  }
}

TEST(Sigma0, ReversesOrders) {
  for (const auto& d : data_up_to(3)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank)) {
      const auto r = sigma0_order_reversal(g, I);
      EXPECT_TRUE(r.holds()) << type_label(d) << I.to_string();
      EXPECT_GT(r.comparable_pairs, 0u);
    }
  }
}

TEST(EoTwists, ComparisonFindings) {
  auto coincide_count = [](const std::string& t) {
    const auto g = make_weyl_group(parse_cartan_type(t));
    std::size_t c = 0;
    for (const auto& I : all_subsets(g->rank())) {
      const auto cmp = compare_eo_twists(g, I);
      EXPECT_EQ(cmp.orders_coincide, cmp.differing_pairs == 0);
      EXPECT_TRUE(cmp.phi_w0I_is_partial_order);
      c += cmp.orders_coincide;
    }
    return c;
  };
  EXPECT_EQ(coincide_count("A2"), 2u);
  EXPECT_EQ(coincide_count("B3"), 8u);
  EXPECT_EQ(coincide_count("C3"), 8u);
  EXPECT_EQ(coincide_count("G2"), 4u);
}

TEST(CustomZipDatum, ValidatesPsi) {
  const auto g = make_weyl_group(parse_cartan_type("A2"));
  const TypeSubset I(2, {1});
  const TypeSubset J(2, {2});
  std::unordered_map<ElemId, ElemId> good{{g->identity(), g->identity()}, {g->simple(1), g->simple(2)}};
  const auto d = make_custom_zip_datum(g, I, J, good);
  EXPECT_EQ(d.flavor, Flavor::Custom);
  EXPECT_TRUE(check_partial_order(strata_poset(d).leq).ok());
  std::unordered_map<ElemId, ElemId> bad{{g->identity(), g->identity()}, {g->simple(1), g->simple(1)}};
  EXPECT_THROW(make_custom_zip_datum(g, I, J, bad), ConfigError);
  std::unordered_map<ElemId, ElemId> partial{{g->identity(), g->identity()}};
  EXPECT_THROW(make_custom_zip_datum(g, I, J, partial), ConfigError);
  EXPECT_THROW(make_zip_datum(g, I, Flavor::Custom), ConfigError);
}

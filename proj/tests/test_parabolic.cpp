#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/parabolic.hpp"

using namespace zipstrata;

TEST(TypeSubset, Basics) {
  const TypeSubset I(3, {1, 3});
  EXPECT_TRUE(I.contains(1));
  EXPECT_FALSE(I.contains(2));
  EXPECT_EQ(I.size(), 2u);
  EXPECT_EQ(I.to_string(), "{1,3}");
  EXPECT_EQ(TypeSubset::empty(2).to_string(), "{}");
  EXPECT_EQ(all_subsets(3).size(), 8u);
  EXPECT_THROW(TypeSubset(2, {3}), ConfigError);
  EXPECT_THROW(TypeSubset(2, {0}), ConfigError);
}

TEST(Cosets, C2SiegelHasFourRepresentatives) {
  const auto g = make_weyl_group(parse_cartan_type("C2"));
  const auto cs = coset_system(*g, TypeSubset(2, {1}));
  EXPECT_EQ(cs.left_reps.size(), 4u);
  EXPECT_EQ(cs.right_reps.size(), 4u);
  EXPECT_EQ(cs.w_I_elements.size(), 2u);
}

TEST(Cosets, MatchBruteForceCosetMinima) {
  for (const auto& d : supported_types(4)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank)) {
      const auto cs = coset_system(*g, I);
      const auto left = oracle::left_minimal_by_cosets(*g, I.indices());
      const auto right = oracle::right_minimal_by_cosets(*g, I.indices());
      ASSERT_FALSE(left.empty());
      EXPECT_EQ(std::set<ElemId>(cs.left_reps.begin(), cs.left_reps.end()), left) << d.name() << I.to_string();
      EXPECT_EQ(std::set<ElemId>(cs.right_reps.begin(), cs.right_reps.end()), right) << d.name() << I.to_string();
      const auto WI = oracle::parabolic(*g, I.indices());
      EXPECT_EQ(std::set<ElemId>(cs.w_I_elements.begin(), cs.w_I_elements.end()), WI);
      EXPECT_EQ(cs.w_I_elements.size() * cs.left_reps.size(), g->order());
    }
  }
}

TEST(Cosets, LongestElementsByBruteForce) {
  for (const auto& d : supported_types(3)) {
    const auto g = make_weyl_group(d);
    for (const auto& I : all_subsets(d.rank)) {
      const auto cs = coset_system(*g, I);
      auto longest_of = [&](const auto& set) {
        ElemId best = *set.begin();
        for (ElemId w : set)
          if (g->length(w) > g->length(best)) best = w;
        return best;
      };
      EXPECT_EQ(cs.w_I0, longest_of(oracle::parabolic(*g, I.indices())));
      EXPECT_EQ(cs.w0_upper_I, longest_of(oracle::right_minimal_by_cosets(*g, I.indices())));
      EXPECT_EQ(cs.upper_I_w0, longest_of(oracle::left_minimal_by_cosets(*g, I.indices())));
      EXPECT_EQ(g->mul(cs.w0_upper_I, cs.w_I0), g->longest());
      EXPECT_EQ(g->mul(cs.w_I0, cs.upper_I_w0), g->longest());
    }
  }
}

TEST(Cosets, DecompositionsAreLengthAdditive) {
  for (const std::string t : {"A3", "B3", "G2"}) {
    const auto g = make_weyl_group(parse_cartan_type(t));
    for (const auto& I : all_subsets(g->rank()))
      for (ElemId w = 0; w < g->order(); ++w) {
        const auto [wI, lw] = decompose_left(*g, w, I);
        EXPECT_EQ(g->mul(wI, lw), w);
        EXPECT_EQ(g->length(wI) + g->length(lw), g->length(w));
        EXPECT_TRUE(in_parabolic(*g, wI, I));
        EXPECT_TRUE(is_left_minimal(*g, lw, I));
        const auto [rw, wI2] = decompose_right(*g, w, I);
        EXPECT_EQ(g->mul(rw, wI2), w);
        EXPECT_EQ(g->length(rw) + g->length(wI2), g->length(w));
        EXPECT_TRUE(is_right_minimal(*g, rw, I));
      }
  }
}

TEST(Types, OppositeAndFrobenius) {
  const auto a3 = make_weyl_group(parse_cartan_type("A3"));
  EXPECT_EQ(opposite_type(*a3, TypeSubset(3, {1})), TypeSubset(3, {3}));
  EXPECT_EQ(opposite_type(*a3, TypeSubset(3, {1, 2})), TypeSubset(3, {2, 3}));
  const auto b3 = make_weyl_group(parse_cartan_type("B3"));
  EXPECT_EQ(opposite_type(*b3, TypeSubset(3, {1})), TypeSubset(3, {1}));
  const auto a3tw = make_weyl_group(parse_cartan_type("A3", {3, 2, 1}));
  EXPECT_EQ(frobenius_type(*a3tw, TypeSubset(3, {1, 2})), TypeSubset(3, {2, 3}));
  const auto d4tw = make_weyl_group(parse_cartan_type("D4", {1, 2, 4, 3}));
  EXPECT_EQ(frobenius_type(*d4tw, TypeSubset(4, {3})), TypeSubset(4, {4}));
  // Opposite type by definition: w0 s_i w0 is simple.
  for (const auto& d : supported_types(4)) {
    const auto g = make_weyl_group(d);
    for (int i = 1; i <= d.rank; ++i) {
      const auto J = opposite_type(*g, TypeSubset(d.rank, {i}));
      ASSERT_EQ(J.size(), 1u);
      EXPECT_EQ(g->mul(g->longest(), g->simple(i), g->longest()), g->simple(J.indices()[0]));
    }
  }
}

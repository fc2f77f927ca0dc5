#include "zipstrata/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "zipstrata/errors.hpp"

namespace zipstrata {

namespace {

// Image of `from` under conjugation by w0 equals `to`, lengths preserved.
bool conjugates_onto(const WeylGroup& g, const std::vector<ElemId>& from, const std::vector<ElemId>& to) {
  const ElemId w0 = g.longest();
  std::set<ElemId> image;
  for (ElemId w : from) {
    const ElemId c = g.mul(w0, w, w0);
    if (g.length(c) != g.length(w)) return false;
    image.insert(c);
  }
  return image == std::set<ElemId>(to.begin(), to.end());
}

bool involution_on(const WeylGroup& g, const std::vector<ElemId>& reps, ElemId target_len_elem,
                   const std::function<ElemId(ElemId)>& f) {
  const std::set<ElemId> domain(reps.begin(), reps.end());
  std::set<ElemId> image;
  for (ElemId w : reps) {
    const ElemId v = f(w);
    if (!domain.contains(v)) return false;
    if (g.length(v) != g.length(target_len_elem) - g.length(w)) return false;
    image.insert(v);
  }
  if (image != domain) return false;
  for (ElemId u : reps)
    for (ElemId w : reps)
      if (g.bruhat_leq(u, w) && !g.bruhat_leq(f(w), f(u))) return false;
  return true;
}

bool poset_ok(const ZipDatum& d, Side side) {
  try {
    return check_partial_order(strata_poset(d, side).leq).ok();
  } catch (const ConsistencyError&) {
    return false;
  }
}

}  // namespace

W0ConjugationCheck check_w0_conjugation(const WeylGroup& g, const TypeSubset& I) {
  const TypeSubset J = opposite_type(g, I);
  const CosetSystem ci = coset_system(g, I);
  const CosetSystem cj = coset_system(g, J);
  const ElemId w0 = g.longest();
  W0ConjugationCheck c;

  std::set<ElemId> conj_simple;
  for (int i : I.indices()) conj_simple.insert(g.mul(w0, g.simple(i), w0));
  std::set<ElemId> simple_J;
  for (int j : J.indices()) simple_J.insert(g.simple(j));
  c.types_conjugate = conj_simple == simple_J;

  c.parabolic_conjugate = conjugates_onto(g, ci.w_I_elements, cj.w_I_elements);
  c.right_reps_conjugate = conjugates_onto(g, ci.right_reps, cj.right_reps);
  c.left_reps_conjugate = conjugates_onto(g, ci.left_reps, cj.left_reps);
  c.longest_conjugate = ci.w_I0 == g.mul(w0, cj.w_I0, w0);
  c.w0J_is_Iw0 = cj.w0_upper_I == ci.upper_I_w0;
  c.w0I_is_Jw0 = ci.w0_upper_I == cj.upper_I_w0;
  return c;
}

DualityInvolutionCheck check_duality_involutions(const WeylGroup& g, const TypeSubset& I) {
  const CosetSystem ci = coset_system(g, I);
  const ElemId w0 = g.longest();
  DualityInvolutionCheck c;
  c.right_side = involution_on(g, ci.right_reps, ci.w0_upper_I, [&](ElemId w) { return g.mul(w0, w, ci.w_I0); });
  c.left_side = involution_on(g, ci.left_reps, ci.w0_upper_I, [&](ElemId w) { return g.mul(ci.w_I0, w, w0); });
  return c;
}

VerifyEntry verify_one(const WeylGroupPtr& group, const TypeSubset& I) {
  const WeylGroup& g = *group;
  VerifyEntry e;
  e.type = type_label(g.root_system().datum());
  e.I = I;
  e.J = opposite_type(g, I);
  const ZipDatum eo = make_zip_datum(group, I, Flavor::EO);
  const ZipDatum dl = make_zip_datum(group, I, Flavor::DL);
  e.left_reps = eo.cosets_I.left_reps.size();
  e.sigma0 = check_sigma0(g, I);
  e.reversal = sigma0_order_reversal(group, I);
  e.eo_dl_equivalence = eo_dl_equivalence(group, I);
  e.w0_conjugation = check_w0_conjugation(g, I);
  e.involutions = check_duality_involutions(g, I);
  e.eo_partial_order = poset_ok(eo, Side::Left) && poset_ok(eo, Side::Right);
  e.dl_partial_order = poset_ok(dl, Side::Left) && poset_ok(dl, Side::Right);
  e.z_comparison = compare_eo_twists(group, I);
  return e;
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  std::set<std::string> wanted;
  for (const std::string& t : cfg.types) {
    const CartanDatum parsed = parse_cartan_type(t);
    if (parsed.rank > cfg.rank_max)
      throw ConfigError("type " + t + " exceeds --rank-max " + std::to_string(cfg.rank_max));
    wanted.insert(parsed.name());
  }
  std::vector<CartanDatum> data;
  for (const CartanDatum& d : supported_types(cfg.rank_max)) {
    if (!wanted.empty() && !wanted.contains(d.name())) continue;
    data.push_back(d);
    if (cfg.include_twisted) {
      auto aut = standard_diagram_automorphism(d.family, d.rank);
      if (!aut.empty()) data.push_back(CartanDatum::make(d.family, d.rank, aut));
    }
  }
  VerifyReport r;
  for (const CartanDatum& d : data) {
    const WeylGroupPtr g = make_weyl_group(d, cfg.weyl_cap);
    for (const TypeSubset& I : all_subsets(d.rank)) r.entries.push_back(verify_one(g, I));
  }
  return r;
}

bool VerifyReport::all_ok() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const VerifyEntry& e) { return !e.mandatory_ok(); }));
}

}  // namespace zipstrata

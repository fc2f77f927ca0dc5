#include "zipstrata/zip_poset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "zipstrata/errors.hpp"

namespace zipstrata {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::EO: return "EO";
    case Flavor::DL: return "DL";
    case Flavor::Custom: return "custom";
  }
  return "?";
}

std::string to_string(EoTwist t) { return t == EoTwist::PhiW0I ? "phi-w0I" : "w0K"; }

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::string psi_defect(const WeylGroup& g, const CosetSystem& I, const CosetSystem& J,
                       const std::unordered_map<ElemId, ElemId>& psi) {
  if (psi.size() != I.w_I_elements.size()) return "psi is not defined on all of W_I";
  std::set<ElemId> image;
  for (ElemId y : I.w_I_elements) {
    auto it = psi.find(y);
    if (it == psi.end()) return "psi is not defined on " + g.word_string(y);
    if (it->second >= g.order() || !J.in_W_I[it->second])
      return "psi(" + g.word_string(y) + ") does not lie in W_J";
    if (g.length(it->second) != g.length(y)) return "psi does not preserve the length of " + g.word_string(y);
    image.insert(it->second);
  }
  if (image.size() != J.w_I_elements.size()) return "psi is not a bijection onto W_J";
  for (ElemId a : I.w_I_elements)
    for (ElemId b : I.w_I_elements)
      if (psi.at(g.mul(a, b)) != g.mul(psi.at(a), psi.at(b))) return "psi is not a homomorphism";
  std::set<ElemId> simple_images;
  for (int i : I.I.indices()) simple_images.insert(psi.at(g.simple(i)));
  std::set<ElemId> simple_J;
  for (int j : J.I.indices()) simple_J.insert(g.simple(j));
  if (simple_images != simple_J) return "psi(I) != J";
  return {};
}

ZipDatum make_zip_datum(WeylGroupPtr group, const TypeSubset& I, Flavor flavor, EoTwist twist) {
  if (flavor == Flavor::Custom) throw ConfigError("custom zip data need an explicit psi");
  const WeylGroup& g = *group;
  ZipDatum d;
  d.group = group;
  d.I = I;
  d.flavor = flavor;
  d.eo_twist = twist;
  d.cosets_I = coset_system(g, I);
  const TypeSubset phi_I = frobenius_type(g, I);
  if (flavor == Flavor::DL) {
    d.J = phi_I;
    d.frame_z = g.identity();
    d.twist = g.identity();
  } else {
    d.J = opposite_type(g, phi_I);  // K
    const CosetSystem k_cosets = coset_system(g, d.J);
    d.frame_z = k_cosets.w0_upper_I;  // w0^K
    d.twist = twist == EoTwist::PhiW0I ? g.frobenius(d.cosets_I.w0_upper_I) : d.frame_z;
  }
  d.cosets_J = coset_system(g, d.J);
  const ElemId t = d.twist;
  const ElemId t_inv = g.inverse(t);
  for (ElemId y : d.cosets_I.w_I_elements) d.psi.emplace(y, g.mul(t, g.frobenius(y), t_inv));
  d.psi_is_isomorphism = psi_defect(g, d.cosets_I, d.cosets_J, d.psi).empty();
  return d;
}

ZipDatum make_custom_zip_datum(WeylGroupPtr group, const TypeSubset& I, const TypeSubset& J,
                               std::unordered_map<ElemId, ElemId> psi, ElemId frame_z) {
  const WeylGroup& g = *group;
  ZipDatum d;
  d.group = group;
  d.I = I;
  d.J = J;
  d.flavor = Flavor::Custom;
  d.frame_z = frame_z;
  d.twist = g.identity();
  d.cosets_I = coset_system(g, I);
  d.cosets_J = coset_system(g, J);
  d.psi = std::move(psi);
  if (auto why = psi_defect(g, d.cosets_I, d.cosets_J, d.psi); !why.empty())
    throw ConfigError("invalid custom psi: " + why);
  d.psi_is_isomorphism = true;
  return d;
}

bool twisted_leq(const ZipDatum& d, ElemId wp, ElemId w) {
  const WeylGroup& g = *d.group;
  for (ElemId y : d.cosets_I.w_I_elements) {
    const ElemId cand = g.mul(y, wp, g.inverse(d.apply_psi(y)));
    if (g.bruhat_leq(cand, w)) return true;
  }
  return false;
}

std::size_t StrataPoset::position(ElemId w) const {
  auto it = std::find(labels.begin(), labels.end(), w);
  if (it == labels.end()) throw UsageError("element is not a label of this poset");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<ElemId> sorted_labels(const WeylGroup& g, std::vector<ElemId> labels) {
  std::vector<std::pair<std::vector<int>, ElemId>> keyed;
  keyed.reserve(labels.size());
  for (ElemId w : labels) keyed.emplace_back(g.reduced_word(w), w);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (std::size_t i = 0; i < keyed.size(); ++i) labels[i] = keyed[i].second;
  return labels;
}

std::vector<std::vector<bool>> twisted_order_matrix(const ZipDatum& d, const std::vector<ElemId>& labels) {
  const WeylGroup& g = *d.group;
  const std::size_t n = labels.size();
  // Precompute the twisted conjugates of every label once.
  std::vector<std::vector<ElemId>> conj(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<ElemId> s;
    for (ElemId y : d.cosets_I.w_I_elements) s.insert(g.mul(y, labels[i], g.inverse(d.apply_psi(y))));
    conj[i].assign(s.begin(), s.end());
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i][j] = std::any_of(conj[i].begin(), conj[i].end(), [&](ElemId c) { return g.bruhat_leq(c, labels[j]); });
  return leq;
}

PartialOrderCheck check_partial_order(const std::vector<std::vector<bool>>& leq) {
  PartialOrderCheck r;
  const std::size_t n = leq.size();
  auto note = [&](const std::string& s) {
    if (r.first_violation.empty()) r.first_violation = s;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (!leq[i][i]) {
      r.reflexive = false;
      note("not reflexive at " + std::to_string(i));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i]) {
        r.antisymmetric = false;
        note("antisymmetry fails for " + std::to_string(i) + ", " + std::to_string(j));
      }
  // Bit rows make the n^3 transitivity check cheap.
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
  for (std::size_t i = 0; i < n && r.transitive; ++i)
    for (std::size_t j = 0; j < n && r.transitive; ++j) {
      if (!leq[i][j]) continue;
      for (std::size_t k = 0; k < words; ++k)
        if ((rows[j][k] & ~rows[i][k]) != 0) {
          r.transitive = false;
          note("transitivity fails through " + std::to_string(i) + " <= " + std::to_string(j));
          break;
        }
    }
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) covered = false;
      if (covered) edges.emplace_back(i, j);
    }
  return edges;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const StrataPoset& p) { return hasse_edges(p.leq); }

StrataPoset strata_poset(const ZipDatum& d, Side side) {
  const WeylGroup& g = *d.group;
  StrataPoset p;
  p.labels = sorted_labels(g, side == Side::Left ? d.cosets_I.left_reps : d.cosets_J.right_reps);
  for (ElemId w : p.labels) p.dim.push_back(g.length(w));
  p.leq = twisted_order_matrix(d, p.labels);

  const auto check = check_partial_order(p.leq);
  auto context = [&] {
    return g.root_system().datum().name() + ", I=" + d.I.to_string() + ", flavor " + to_string(d.flavor) +
           ", side " + to_string(side);
  };
  if (!check.ok())
    throw ConsistencyError("twisted order is not a partial order (" + context() + "): " + check.first_violation);

  std::vector<std::size_t> maximal;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool is_max = true;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != i && p.leq[i][j]) is_max = false;
    if (is_max) maximal.push_back(i);
  }
  if (maximal.size() != 1) throw ConsistencyError("strata poset has no unique maximal element (" + context() + ")");
  const int top = *std::max_element(p.dim.begin(), p.dim.end());
  if (p.dim[maximal.front()] != top)
    throw ConsistencyError("maximal stratum is not of maximal length (" + context() + ")");

  p.hasse = hasse_edges(p.leq);
  return p;
}

ElemId sigma(const ZipDatum& d, ElemId w) {
  const WeylGroup& g = *d.group;
  if (!d.cosets_I.in_left[w]) throw UsageError("sigma expects an element of ^I W");
  std::set<ElemId> hits;
  std::set<ElemId> all;
  for (ElemId y : d.cosets_I.w_I_elements) {
    const ElemId c = g.mul(y, w, g.inverse(d.apply_psi(y)));
    all.insert(c);
    if (d.cosets_J.in_right[c] && g.length(c) == g.length(w)) hits.insert(c);
  }
  if (hits.size() != 1) {
    std::ostringstream os;
    os << "sigma(" << g.word_string(w) << ") has " << hits.size() << " candidates in W^J of length " << g.length(w)
       << " (" << g.root_system().datum().name() << ", I=" << d.I.to_string() << ", J=" << d.J.to_string()
       << ", flavor " << to_string(d.flavor) << "); all twisted conjugates:";
    for (ElemId c : all)
      os << ' ' << g.word_string(c) << "[l=" << g.length(c) << (d.cosets_J.in_right[c] ? ",W^J" : "") << ']';
    throw ConsistencyError(os.str());
  }
  return *hits.begin();
}

Sigma0Map sigma0(const WeylGroup& g, const TypeSubset& I) {
  const CosetSystem cs = coset_system(g, I);
  Sigma0Map m;
  m.I = I;
  m.J = opposite_type(g, I);
  m.multiplier = cs.w0_upper_I;
  for (ElemId w : cs.left_reps) {
    const ElemId img = g.mul(cs.w0_upper_I, w);
    m.pairs.emplace_back(w, img);
    m.forward.emplace(w, img);
  }
  return m;
}

Sigma0Check check_sigma0(const WeylGroup& g, const TypeSubset& I) {
  const Sigma0Map m = sigma0(g, I);
  const CosetSystem cj = coset_system(g, m.J);
  Sigma0Check c;
  std::set<ElemId> image;
  for (const auto& [w, img] : m.pairs) image.insert(img);
  const std::set<ElemId> target(cj.left_reps.begin(), cj.left_reps.end());
  c.bijective = image.size() == m.pairs.size() && image == target;
  const int top = g.length(cj.w0_upper_I);
  c.length_formula = std::all_of(m.pairs.begin(), m.pairs.end(),
                                 [&](const auto& pr) { return g.length(pr.second) == top - g.length(pr.first); });
  return c;
}

EquivalenceReport eo_dl_equivalence(WeylGroupPtr group, const TypeSubset& I_plus, EoTwist twist) {
  const WeylGroup& g = *group;
  EquivalenceReport rep;
  rep.I_plus = I_plus;
  rep.I_minus = opposite_type(g, I_plus);
  const ZipDatum eo = make_zip_datum(group, I_plus, Flavor::EO, twist);
  const ZipDatum dl = make_zip_datum(group, rep.I_minus, Flavor::DL);
  const Sigma0Map plus = sigma0(g, I_plus);
  const Sigma0Map minus = sigma0(g, rep.I_minus);

  const auto& left_plus = eo.cosets_I.left_reps;
  const auto& left_minus = dl.cosets_I.left_reps;
  const auto dl_order = twisted_order_matrix(dl, left_minus);
  const auto eo_order = twisted_order_matrix(eo, left_plus);
  auto pos = [](const std::vector<ElemId>& v, ElemId x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  };
  for (ElemId wp : left_plus)
    for (ElemId w : left_minus) {
      const bool lhs = dl_order[pos(left_minus, w)][pos(left_minus, plus.forward.at(wp))];
      const bool rhs = eo_order[pos(left_plus, wp)][pos(left_plus, minus.forward.at(w))];
      ++rep.pairs_checked;
      if (lhs != rhs) rep.counterexamples.emplace_back(wp, w);
    }
  return rep;
}

ReversalReport sigma0_order_reversal(WeylGroupPtr group, const TypeSubset& I, EoTwist twist) {
  const WeylGroup& g = *group;
  ReversalReport rep;
  const ZipDatum eo = make_zip_datum(group, I, Flavor::EO, twist);
  const ZipDatum dl = make_zip_datum(group, opposite_type(g, I), Flavor::DL);
  const Sigma0Map s0 = sigma0(g, I);
  const auto& src = eo.cosets_I.left_reps;
  const auto& dst = dl.cosets_I.left_reps;
  const auto eo_order = twisted_order_matrix(eo, src);
  const auto dl_order = twisted_order_matrix(dl, dst);
  auto pos = [](const std::vector<ElemId>& v, ElemId x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  };
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b) {
      if (!eo_order[a][b]) continue;
      ++rep.comparable_pairs;
      const std::size_t sa = pos(dst, s0.forward.at(src[a]));
      const std::size_t sb = pos(dst, s0.forward.at(src[b]));
      if (!dl_order[sb][sa]) rep.counterexamples.emplace_back(src[a], src[b]);
    }
  return rep;
}

EoTwistComparison compare_eo_twists(WeylGroupPtr group, const TypeSubset& I) {
  EoTwistComparison c;
  c.I = I;
  const ZipDatum a = make_zip_datum(group, I, Flavor::EO, EoTwist::PhiW0I);
  const ZipDatum b = make_zip_datum(group, I, Flavor::EO, EoTwist::FrameW0K);
  c.twists_equal = a.twist == b.twist;
  c.frame_w0K_psi_is_isomorphism = b.psi_is_isomorphism;
  const auto& labels = a.cosets_I.left_reps;
  const auto la = twisted_order_matrix(a, labels);
  const auto lb = twisted_order_matrix(b, labels);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (la[i][j] != lb[i][j]) ++c.differing_pairs;
  c.orders_coincide = c.differing_pairs == 0;
  c.phi_w0I_is_partial_order = check_partial_order(la).ok();
  c.frame_w0K_is_partial_order = check_partial_order(lb).ok();
  return c;
}

}  // namespace zipstrata

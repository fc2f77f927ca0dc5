#include "zipstrata/fq_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "zipstrata/errors.hpp"

namespace zipstrata::fq {

std::string to_string(GroupFamily f) { return f == GroupFamily::GL ? "GL" : "SL"; }

int FqGroupSpec::q() const {
  int v = 1;
  for (int i = 0; i < degree; ++i) v *= p;
  return v;
}

TypeSubset FqGroupSpec::type() const {
  std::vector<int> idx;
  for (int i = 0; i + 1 < n; ++i)
    if (weights[static_cast<std::size_t>(i)] == weights[static_cast<std::size_t>(i + 1)]) idx.push_back(i + 1);
  return TypeSubset(n - 1, idx);
}

FqGroupSpec FqGroupSpec::opposite() const {
  FqGroupSpec o = *this;
  o.weights.assign(weights.rbegin(), weights.rend());
  for (int& a : o.weights) a = -a;
  return o;
}

void FqGroupSpec::validate() const {
  if (n < 2 || n > kMaxMatrixSize) throw ConfigError("matrix size must lie in 2.." + std::to_string(kMaxMatrixSize));
  if (p != 2 && p != 3 && p != 5) throw ConfigError("characteristic must be 2, 3 or 5");
  if (degree < 1) throw ConfigError("field degree must be positive");
  if (static_cast<int>(weights.size()) != n)
    throw ConfigError("expected " + std::to_string(n) + " cocharacter weights, got " + std::to_string(weights.size()));
  for (std::size_t i = 0; i + 1 < weights.size(); ++i)
    if (weights[i] < weights[i + 1]) throw ConfigError("cocharacter weights must be weakly decreasing");
}

std::uint64_t group_order(GroupFamily family, int n, std::uint64_t Q) {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= Q;
  std::uint64_t order = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= Q;
  }
  return family == GroupFamily::SL ? order / (Q - 1) : order;
}

namespace {

std::vector<int> block_sizes(const std::vector<int>& weights) {
  std::vector<int> sizes;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i == 0 || weights[i] != weights[i - 1])
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  return sizes;
}

std::uint64_t gaussian_factorial(int k, std::uint64_t Q) {
  // prod_{i=1}^{k} (Q^i - 1) / (Q - 1)
  std::uint64_t out = 1;
  std::uint64_t qi = 1;
  for (int i = 1; i <= k; ++i) {
    qi *= Q;
    out *= (qi - 1) / (Q - 1);
  }
  return out;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Matrix elementary(int n, int i, int j, Elt t) {
  Matrix m = Matrix::identity(n);
  m.at(i, j) = t;
  return m;
}

}  // namespace

std::uint64_t flag_variety_order(const FqGroupSpec& spec, std::uint64_t Q) {
  std::uint64_t out = gaussian_factorial(spec.n, Q);
  for (int b : block_sizes(spec.weights)) out /= gaussian_factorial(b, Q);
  return out;
}

FqOracle::FqOracle(FqGroupSpec spec, int top_level, OracleCaps caps)
    : spec_((spec.validate(), std::move(spec))),
      top_level_(top_level),
      caps_(caps),
      field_(spec_.p, spec_.degree * std::max(top_level, 1)),
      weyl_(make_weyl_group(CartanDatum::make(Family::A, spec_.n - 1))) {
  if (top_level < 1) throw ConfigError("top level must be positive");
  std::uint64_t pow = 1;
  for (int k = 0; k < spec_.n * spec_.n; ++k) {
    if (pow > (~std::uint64_t{0}) / static_cast<std::uint64_t>(field_.size()))
      throw ConfigError("matrix encoding overflow: field too large for n=" + std::to_string(spec_.n));
    pow *= static_cast<std::uint64_t>(field_.size());
  }
}

int FqOracle::abs_degree(int m) const {
  if (m < 1 || top_level_ % m != 0)
    throw ConfigError("level " + std::to_string(m) + " does not divide the top level " + std::to_string(top_level_));
  return spec_.degree * m;
}

std::vector<Elt> FqOracle::level_elements(int m) const { return field_.subfield(abs_degree(m)); }

bool FqOracle::in_family(const Matrix& x) const {
  const Elt d = det(field_, x);
  return spec_.family == GroupFamily::GL ? d != 0 : d == 1;
}

std::vector<bool> FqOracle::pattern_P() const {
  const int n = spec_.n;
  std::vector<bool> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = spec_.weights[i] >= spec_.weights[j];
  return a;
}

std::vector<bool> FqOracle::pattern_P_minus() const {
  const int n = spec_.n;
  std::vector<bool> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = spec_.weights[i] <= spec_.weights[j];
  return a;
}

std::vector<bool> FqOracle::pattern_levi() const {
  const int n = spec_.n;
  std::vector<bool> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = spec_.weights[i] == spec_.weights[j];
  return a;
}

std::vector<bool> FqOracle::pattern_Q(Flavor flavor) const {
  if (flavor == Flavor::Custom) throw ConfigError("the matrix oracle supports the EO and DL flavors only");
  return flavor == Flavor::EO ? pattern_P_minus() : pattern_P();
}

bool FqOracle::in_P(const Matrix& x) const {
  const auto pat = pattern_P();
  for (std::size_t k = 0; k < pat.size(); ++k)
    if (!pat[k] && x.a[k] != 0) return false;
  return in_family(x);
}

bool FqOracle::in_Q(Flavor flavor, const Matrix& x) const {
  const auto pat = pattern_Q(flavor);
  for (std::size_t k = 0; k < pat.size(); ++k)
    if (!pat[k] && x.a[k] != 0) return false;
  return in_family(x);
}

Matrix FqOracle::levi_part(const Matrix& x) const {
  const auto pat = pattern_levi();
  Matrix y = x;
  for (std::size_t k = 0; k < pat.size(); ++k)
    if (!pat[k]) y.a[k] = 0;
  return y;
}

std::vector<Matrix> FqOracle::matrices_with_pattern(int m, const std::vector<bool>& allowed, bool invertible,
                                                    std::size_t cap) const {
  const auto elems = level_elements(m);
  std::vector<std::size_t> slots;
  for (std::size_t k = 0; k < allowed.size(); ++k)
    if (allowed[k]) slots.push_back(k);
  double candidates = 1;
  for (std::size_t s = 0; s < slots.size(); ++s) candidates *= static_cast<double>(elems.size());
  if (candidates > 64.0 * static_cast<double>(cap) + 1e6)
    throw ResourceError("matrix enumeration over F_" + std::to_string(elems.size()) + " exceeds the group cap " +
                        std::to_string(cap));
  std::vector<Matrix> out;
  std::vector<std::size_t> digit(slots.size(), 0);
  Matrix cur;
  cur.n = spec_.n;
  while (true) {
    for (std::size_t s = 0; s < slots.size(); ++s) cur.a[slots[s]] = elems[digit[s]];
    if (!invertible || in_family(cur)) {
      if (out.size() >= cap)
        throw ResourceError("enumeration exceeds the group cap " + std::to_string(cap) +
                            " (raise it with --group-cap or ZIPSTRATA_CAP)");
      out.push_back(cur);
    }
    std::size_t s = 0;
    while (s < slots.size() && ++digit[s] == elems.size()) digit[s++] = 0;
    if (s == slots.size()) break;
  }
  return out;
}

std::vector<Matrix> FqOracle::enumerate_group(int m) const {
  std::uint64_t Q = 1;
  for (int k = 0; k < abs_degree(m); ++k) Q *= static_cast<std::uint64_t>(spec_.p);
  const std::uint64_t order = group_order(spec_.family, spec_.n, Q);
  if (order > caps_.group)
    throw ResourceError(to_string(spec_.family) + "_" + std::to_string(spec_.n) + "(F_" + std::to_string(Q) + ") has " +
                        std::to_string(order) + " elements, above the group cap " + std::to_string(caps_.group) +
                        " (raise it with --group-cap or ZIPSTRATA_CAP)");
  return matrices_with_pattern(m, std::vector<bool>(static_cast<std::size_t>(spec_.n * spec_.n), true), true,
                               caps_.group);
}

std::uint64_t FqOracle::zip_group_order(int m) const {
  std::uint64_t Q = 1;
  for (int k = 0; k < abs_degree(m); ++k) Q *= static_cast<std::uint64_t>(spec_.p);
  std::uint64_t levi = 1;
  for (int b : block_sizes(spec_.weights)) levi *= group_order(GroupFamily::GL, b, Q);
  if (spec_.family == GroupFamily::SL) levi /= Q - 1;
  int dim_u = 0;
  for (int i = 0; i < spec_.n; ++i)
    for (int j = 0; j < spec_.n; ++j)
      if (spec_.weights[i] > spec_.weights[j]) ++dim_u;
  std::uint64_t out = levi;
  for (int k = 0; k < 2 * dim_u; ++k) out *= Q;
  return out;
}

std::vector<std::pair<Matrix, Matrix>> FqOracle::zip_group(Flavor flavor, int m) const {
  const auto qpat = pattern_Q(flavor);
  const auto lpat = pattern_levi();
  std::vector<bool> radical(qpat.size());
  for (std::size_t k = 0; k < qpat.size(); ++k) radical[k] = qpat[k] && !lpat[k];

  if (zip_group_order(m) > caps_.group)
    throw ResourceError("zip group has " + std::to_string(zip_group_order(m)) + " elements, above the group cap " +
                        std::to_string(caps_.group));
  const auto P = matrices_with_pattern(m, pattern_P(), true, caps_.group);
  // Unipotent radical of Q: identity plus free entries in the radical slots.
  std::vector<Matrix> V;
  {
    auto raw = matrices_with_pattern(m, radical, false, caps_.group);
    for (auto& v : raw) {
      for (int i = 0; i < spec_.n; ++i) v.at(i, i) = 1;
      V.push_back(v);
    }
  }
  std::vector<std::pair<Matrix, Matrix>> out;
  out.reserve(P.size() * V.size());
  for (const auto& x : P) {
    const Matrix l = mat_frobenius(field_, levi_part(x));
    for (const auto& v : V) out.emplace_back(x, mat_mul(field_, l, v));
  }
  return out;
}

std::vector<std::pair<Matrix, Matrix>> FqOracle::zip_group_generators(Flavor flavor, int m) const {
  const int n = spec_.n;
  const auto basis = field_.subfield_basis(abs_degree(m));
  const Elt g = field_.subfield_generator(abs_degree(m));
  const auto& a = spec_.weights;
  const bool eo = flavor == Flavor::EO;
  if (flavor == Flavor::Custom) throw ConfigError("the matrix oracle supports the EO and DL flavors only");
  const Matrix one = Matrix::identity(n);
  std::vector<std::pair<Matrix, Matrix>> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (Elt t : basis) {
        const Matrix x = elementary(n, i, j, t);
        if (a[i] > a[j]) gens.emplace_back(x, one);                        // R_u P
        if (eo ? a[i] < a[j] : a[i] > a[j]) gens.emplace_back(one, x);     // R_u Q
        if (a[i] == a[j]) gens.emplace_back(x, mat_frobenius(field_, x));  // Levi root subgroups
      }
    }
  for (int i = 0; i < n; ++i) {
    Matrix d = Matrix::identity(n);
    if (spec_.family == GroupFamily::GL) {
      d.at(i, i) = g;
    } else {
      if (i + 1 == n) break;
      d.at(i, i) = g;
      d.at(i + 1, i + 1) = field_.inv(g);
    }
    gens.emplace_back(d, mat_frobenius(field_, d));
  }
  return gens;
}

Matrix FqOracle::weyl_representative_matrix(ElemId w) const {
  const int n = spec_.n;
  const bool signed_lift = spec_.family == GroupFamily::SL && spec_.p != 2;
  Matrix out = Matrix::identity(n);
  for (int i : weyl_->reduced_word(w)) {
    Matrix s = Matrix::identity(n);
    const int r = i - 1;
    s.at(r, r) = 0;
    s.at(r + 1, r + 1) = 0;
    s.at(r, r + 1) = signed_lift ? field_.neg(1) : Elt{1};
    s.at(r + 1, r) = 1;
    out = mat_mul(field_, out, s);
  }
  return out;
}

ZipDatum FqOracle::zip_datum(Flavor flavor) const { return make_zip_datum(weyl_, spec_.type(), flavor); }

Matrix FqOracle::orbit_representative(Flavor flavor, ElemId w) const {
  const ZipDatum d = zip_datum(flavor);
  const auto z_inv = mat_inverse(field_, weyl_representative_matrix(d.frame_z));
  return mat_mul(field_, weyl_representative_matrix(w), *z_inv);
}

Matrix FqOracle::lang_map(const Matrix& h) const {
  const auto inv = mat_inverse(field_, mat_frobenius(field_, h));
  if (!inv) throw UsageError("lang_map expects an invertible matrix");
  return mat_mul(field_, h, *inv);
}

OrbitTable FqOracle::orbit_partition(Flavor flavor, int m, OrbitMethod method) const {
  OrbitTable t;
  t.level = m;
  t.elements = enumerate_group(m);
  t.zip_group_order = zip_group_order(m);
  const std::size_t n = t.elements.size();
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(n * 2);
  for (std::size_t k = 0; k < n; ++k) index.emplace(mat_key(field_, t.elements[k]), static_cast<std::uint32_t>(k));
  auto idx = [&](const Matrix& x) {
    auto it = index.find(mat_key(field_, x));
    if (it == index.end()) throw ConsistencyError("zip action left the group: " + mat_to_string(field_, x));
    return it->second;
  };

  auto run = [&](const std::vector<std::pair<Matrix, Matrix>>& pairs) {
    UnionFind uf(n);
    std::vector<std::pair<Matrix, Matrix>> acting;
    acting.reserve(pairs.size());
    for (const auto& [x, y] : pairs) acting.emplace_back(x, *mat_inverse(field_, y));
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [x, y_inv] : acting)
        uf.unite(static_cast<std::uint32_t>(k), idx(mat_mul(field_, mat_mul(field_, x, t.elements[k]), y_inv)));
    std::vector<std::uint32_t> roots(n);
    for (std::size_t k = 0; k < n; ++k) roots[k] = uf.find(static_cast<std::uint32_t>(k));
    return roots;
  };

  const bool small = static_cast<double>(n) * static_cast<double>(t.zip_group_order) <=
                     static_cast<double>(caps_.full_enumeration);
  std::vector<std::uint32_t> roots;
  if (method == OrbitMethod::FullEnumeration) {
    roots = run(zip_group(flavor, m));
  } else {
    roots = run(zip_group_generators(flavor, m));
    if (method == OrbitMethod::Auto && small) {
      // Cross-validate the generator route against the whole zip group.
      const auto full = run(zip_group(flavor, m));
      if (full != roots) throw ConsistencyError("generator orbits differ from full zip-group orbits");
    }
  }

  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  t.orbit_of.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto [it, fresh] = dense.emplace(roots[k], static_cast<std::uint32_t>(dense.size()));
    if (fresh) t.orbits.emplace_back();
    t.orbit_of[k] = it->second;
    t.orbits[it->second].push_back(static_cast<std::uint32_t>(k));
  }
  for (const auto& o : t.orbits) t.sizes.push_back(o.size());
  const ZipDatum d = zip_datum(flavor);
  for (ElemId w : d.cosets_I.left_reps) t.representative_labels[w] = t.orbit_of[idx(orbit_representative(flavor, w))];
  t.merged_geometric.resize(t.orbits.size());
  std::iota(t.merged_geometric.begin(), t.merged_geometric.end(), 0u);
  return t;
}

MergeReport FqOracle::geometric_merge(Flavor flavor, const std::vector<int>& levels) const {
  if (levels.empty()) throw ConfigError("geometric merge needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    (void)abs_degree(levels[i]);
    if (i > 0 && (levels[i] <= levels[i - 1] || levels[i] % levels[i - 1] != 0))
      throw ConfigError("levels must be ascending and each must divide the next");
  }
  if (levels.back() != top_level_) throw ConfigError("the last level must equal the oracle's top level");

  MergeReport rep;
  rep.flavor = flavor;
  rep.levels = levels;
  rep.expected = zip_datum(flavor).cosets_I.left_reps.size();
  rep.base = orbit_partition(flavor, levels.front());
  rep.rational_orbits_base = rep.base.orbits.size();

  // For each level, the base points are sorted into E(F_{q^level})-orbits; the
  // count of distinct classes is the merged count at that level.
  OrbitTable top;
  std::vector<std::uint32_t> base_to_top(rep.base.elements.size());
  for (int m : levels) {
    OrbitTable t = m == levels.front() ? rep.base : orbit_partition(flavor, m);
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    index.reserve(t.elements.size() * 2);
    for (std::size_t k = 0; k < t.elements.size(); ++k) index.emplace(mat_key(field_, t.elements[k]), t.orbit_of[k]);
    std::set<std::uint32_t> hit;
    for (std::size_t k = 0; k < rep.base.elements.size(); ++k) {
      base_to_top[k] = index.at(mat_key(field_, rep.base.elements[k]));
      hit.insert(base_to_top[k]);
    }
    rep.counts.push_back(hit.size());
    if (m == levels.back()) top = std::move(t);
  }
  rep.merged_count = rep.counts.back();
  rep.stable = levels.size() >= 2 && rep.counts[rep.counts.size() - 1] == rep.counts[rep.counts.size() - 2];

  std::set<std::uint32_t> rep_orbits;
  for (const auto& [w, o] : top.representative_labels) rep_orbits.insert(o);
  rep.representatives_distinct = rep_orbits.size() == top.representative_labels.size();
  const std::set<std::uint32_t> base_hit(base_to_top.begin(), base_to_top.end());
  rep.representatives_cover = std::includes(rep_orbits.begin(), rep_orbits.end(), base_hit.begin(), base_hit.end());

  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (std::size_t o = 0; o < rep.base.orbits.size(); ++o) {
    const std::uint32_t target = base_to_top[rep.base.orbits[o].front()];
    for (std::uint32_t e : rep.base.orbits[o])
      if (base_to_top[e] != target) throw ConsistencyError("a rational orbit splits over the extension field");
    auto [it, fresh] = dense.emplace(target, static_cast<std::uint32_t>(dense.size()));
    rep.base.merged_geometric[o] = it->second;
  }
  return rep;
}

std::vector<Matrix> FqOracle::flag_representatives(int m) const {
  const int n = spec_.n;
  const auto elems = level_elements(m);
  std::uint64_t Q = elems.size();
  if (flag_variety_order(spec_, Q) > caps_.flags)
    throw ResourceError("flag variety has " + std::to_string(flag_variety_order(spec_, Q)) +
                        " points, above the flag cap " + std::to_string(caps_.flags));

  using Row = std::vector<Elt>;
  struct Subspace {
    std::vector<Row> rows;  // reduced row echelon form
    std::vector<int> pivots;
  };
  // All subspaces of a given dimension, in reduced row echelon form.
  auto subspaces = [&](int dim) {
    std::vector<Subspace> out;
    std::vector<int> piv(static_cast<std::size_t>(dim));
    std::function<void(int, int)> choose = [&](int k, int start) {
      if (k == dim) {
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < dim; ++r)
          for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
        std::vector<std::size_t> digit(free.size(), 0);
        while (true) {
          Subspace s;
          s.pivots = piv;
          s.rows.assign(static_cast<std::size_t>(dim), Row(static_cast<std::size_t>(n), 0));
          for (int r = 0; r < dim; ++r) s.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = 1;
          for (std::size_t f = 0; f < free.size(); ++f)
            s.rows[static_cast<std::size_t>(free[f].first)][static_cast<std::size_t>(free[f].second)] = elems[digit[f]];
          out.push_back(std::move(s));
          std::size_t f = 0;
          while (f < free.size() && ++digit[f] == elems.size()) digit[f++] = 0;
          if (f == free.size()) break;
        }
        return;
      }
      for (int c = start; c < n; ++c) {
        piv[static_cast<std::size_t>(k)] = c;
        choose(k + 1, c + 1);
      }
    };
    choose(0, 0);
    return out;
  };

  const auto sizes = block_sizes(spec_.weights);
  std::vector<int> dims;
  int acc = 0;
  for (std::size_t b = 0; b + 1 < sizes.size(); ++b) dims.push_back(acc += sizes[b]);
  std::vector<std::vector<Subspace>> by_dim;
  for (int dim : dims) by_dim.push_back(subspaces(dim));

  auto contains = [&](const Subspace& big, const Subspace& small) {
    std::vector<Row> rows = big.rows;
    rows.insert(rows.end(), small.rows.begin(), small.rows.end());
    return row_rank(field_, rows) == static_cast<int>(big.rows.size());
  };

  std::vector<Matrix> out;
  std::vector<const Subspace*> chain;
  std::function<void(std::size_t)> extend = [&](std::size_t level) {
    if (level == dims.size()) {
      Matrix h;
      h.n = n;
      int row = 0;
      std::vector<int> used;
      for (const Subspace* s : chain) {
        for (std::size_t r = 0; r < s->rows.size(); ++r) {
          if (std::find(used.begin(), used.end(), s->pivots[r]) != used.end()) continue;
          for (int c = 0; c < n; ++c) h.at(row, c) = s->rows[r][static_cast<std::size_t>(c)];
          ++row;
        }
        used = s->pivots;
      }
      for (int c = 0; c < n; ++c)
        if (std::find(used.begin(), used.end(), c) == used.end()) h.at(row++, c) = 1;
      if (spec_.family == GroupFamily::SL) {
        const Elt s = field_.inv(det(field_, h));
        for (int c = 0; c < n; ++c) h.at(n - 1, c) = field_.mul(s, h.at(n - 1, c));
      }
      out.push_back(h);
      return;
    }
    for (const auto& s : by_dim[level]) {
      if (!chain.empty() && !contains(s, *chain.back())) continue;
      chain.push_back(&s);
      extend(level + 1);
      chain.pop_back();
    }
  };
  extend(0);
  return out;
}

DlLabeller FqOracle::dl_labeller(int m) const {
  const FqGroupSpec opp_spec = spec_.opposite();
  const WeylGroup& g = *weyl_;
  DlLabeller d;
  d.field_ = &field_;
  d.I_minus_ = opp_spec.type();
  if (!(d.I_minus_ == opposite_type(g, spec_.type())))
    throw ConsistencyError("reversed weights do not give the opposite type");
  const CosetSystem cs = coset_system(g, spec_.type());
  const ElemId y = cs.upper_I_w0;
  d.y_inv_ = *mat_inverse(field_, weyl_representative_matrix(y));
  d.z_ = weyl_representative_matrix(g.frobenius(y));

  // The E-orbit of r_w for the DL datum of type I_- is { l u r_w v phi(l)^{-1} }.
  const int n = spec_.n;
  d.n_ = n;
  std::vector<bool> levi_pat(static_cast<std::size_t>(n * n));
  d.rad_pat_.assign(static_cast<std::size_t>(n * n), false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      levi_pat[static_cast<std::size_t>(i * n + j)] = opp_spec.weights[i] == opp_spec.weights[j];
      d.rad_pat_[static_cast<std::size_t>(i * n + j)] = opp_spec.weights[i] > opp_spec.weights[j];
    }
  for (const auto& l : matrices_with_pattern(m, levi_pat, true, caps_.group))
    d.twisted_levi_.emplace_back(*mat_inverse(field_, l), mat_frobenius(field_, l));
  for (auto u : matrices_with_pattern(m, d.rad_pat_, false, caps_.group)) {
    for (int i = 0; i < n; ++i) u.at(i, i) = 1;
    d.unip_inv_.push_back(*mat_inverse(field_, u));
  }

  d.labels_ = make_zip_datum(weyl_, d.I_minus_, Flavor::DL).cosets_I.left_reps;
  const double cell_size = static_cast<double>(d.unip_inv_.size()) * static_cast<double>(d.unip_inv_.size());
  d.hashed_ = cell_size * static_cast<double>(d.labels_.size()) <= 8e6;
  d.cells_.resize(d.labels_.size());
  d.sizes_ = block_sizes(opp_spec.weights);
  for (std::size_t k = 0; k < d.labels_.size(); ++k) {
    const Matrix r = weyl_representative_matrix(d.labels_[k]);
    d.reps_inv_.push_back(*mat_inverse(field_, r));
    d.rep_profiles_.push_back(d.rank_profile(r));
    if (!d.hashed_) continue;
    for (const auto& u : d.unip_inv_) {
      const Matrix ur = mat_mul(field_, u, r);
      for (const auto& v : d.unip_inv_) d.cells_[k].insert(mat_key(field_, mat_mul(field_, ur, v)));
    }
  }
  return d;
}

Matrix DlLabeller::translate(const Matrix& h) const {
  const Field& F = *field_;
  const Matrix gamma = mat_mul(F, h, *mat_inverse(F, mat_frobenius(F, h)));
  return mat_mul(F, mat_mul(F, y_inv_, gamma), z_);
}

// Ranks of the lower-left block submatrices: constant on P x P double cosets.
std::vector<int> DlLabeller::rank_profile(const Matrix& x) const {
  std::vector<int> prof;
  int row_start = 0;
  for (int bi : sizes_) {
    int col_end = 0;
    for (int bj : sizes_) {
      col_end += bj;
      std::vector<std::vector<Elt>> rows;
      for (int r = row_start; r < n_; ++r) {
        rows.emplace_back();
        for (int c = 0; c < col_end; ++c) rows.back().push_back(x.at(r, c));
      }
      prof.push_back(row_rank(*field_, rows));
    }
    row_start += bi;
  }
  return prof;
}

bool DlLabeller::in_cell(std::size_t k, const Matrix& x) const {
  const Field& F = *field_;
  if (hashed_) return cells_[k].contains(mat_key(F, x));
  for (const auto& u_inv : unip_inv_) {
    const Matrix t = mat_mul(F, reps_inv_[k], mat_mul(F, u_inv, x));
    bool ok = true;
    for (int i = 0; i < n_ && ok; ++i)
      for (int j = 0; j < n_ && ok; ++j) {
        const Elt e = t.at(i, j);
        ok = i == j ? e == 1 : (rad_pat_[static_cast<std::size_t>(i * n_ + j)] || e == 0);
      }
    if (ok) return true;
  }
  return false;
}

std::optional<ElemId> DlLabeller::label(const Matrix& x) const {
  const auto prof = rank_profile(x);
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (rep_profiles_[k] == prof) candidates.push_back(k);
  if (candidates.size() == 1) return labels_[candidates.front()];
  const Field& F = *field_;
  for (const auto& [l_inv, l_phi] : twisted_levi_) {
    const Matrix t = mat_mul(F, mat_mul(F, l_inv, x), l_phi);
    for (std::size_t k : candidates)
      if (in_cell(k, t)) return labels_[k];
  }
  return std::nullopt;
}

DlStrataCounts FqOracle::dl_strata_counts(int m) const {
  const DlLabeller d = dl_labeller(m);
  DlStrataCounts out;
  out.extension = m;
  out.I_minus = d.I_minus();
  for (ElemId w : d.labels()) out.counts[w] = 0;
  const auto flags = flag_representatives(m);
  for (const auto& h : flags) {
    if (auto w = d.label(d.translate(h)))
      ++out.counts[*w];
    else
      ++out.unresolved;
  }
  out.field_size = level_elements(m).size();
  out.total = flags.size();
  out.expected_total = flag_variety_order(spec_, out.field_size);
  return out;
}

namespace {

struct Fraction {
  __int128 num = 0;
  __int128 den = 1;
};

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Fraction normalize(Fraction f) {
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  const __int128 g = gcd128(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

Fraction add(Fraction a, Fraction b) { return normalize({a.num * b.den + b.num * a.den, a.den * b.den}); }

}  // namespace

bool polynomial_consistent(const std::vector<std::pair<std::int64_t, std::int64_t>>& samples, int degree) {
  const auto k = static_cast<std::size_t>(degree + 1);
  if (degree < 0 || samples.size() <= k) return false;
  // Lagrange form through the first degree+1 samples.
  auto eval = [&](std::int64_t x) {
    Fraction sum;
    for (std::size_t i = 0; i < k; ++i) {
      Fraction term{samples[i].second, 1};
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        term = normalize({term.num * (x - samples[j].first), term.den * (samples[i].first - samples[j].first)});
      }
      sum = add(sum, term);
    }
    return sum;
  };
  for (std::size_t s = k; s < samples.size(); ++s) {
    const Fraction v = eval(samples[s].first);
    if (v.den != 1 || v.num != samples[s].second) return false;
  }
  Fraction lead;
  for (std::size_t i = 0; i < k; ++i) {
    Fraction term{samples[i].second, 1};
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) term = normalize({term.num, term.den * (samples[i].first - samples[j].first)});
    lead = add(lead, term);
  }
  return lead.num != 0;
}

}  // namespace zipstrata::fq

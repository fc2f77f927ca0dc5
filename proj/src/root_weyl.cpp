#include "zipstrata/root_weyl.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "zipstrata/errors.hpp"

namespace zipstrata {

namespace {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    case Family::G: return 'G';
  }
  return '?';
}

std::vector<std::vector<int>> cartan_matrix_for(Family family, int rank) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  auto link = [&](int i, int j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1, -1, -1);
      break;
    case Family::B:
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
      link(rank - 2, rank - 1, -1, -2);
      break;
    case Family::C:
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
      link(rank - 2, rank - 1, -2, -1);
      break;
    case Family::D:
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
      link(rank - 3, rank - 1, -1, -1);
      break;
    case Family::G:
      link(0, 1, -3, -1);
      break;
  }
  return a;
}

bool supported(Family family, int rank) {
  switch (family) {
    case Family::A: return rank >= 1 && rank <= 4;
    case Family::B:
    case Family::C: return rank >= 2 && rank <= 4;
    case Family::D: return rank >= 3 && rank <= 4;
    case Family::G: return rank == 2;
  }
  return false;
}

std::vector<std::uint8_t> compose(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

}  // namespace

CartanDatum CartanDatum::make(Family family, int rank, std::vector<int> automorphism) {
  CartanDatum d;
  d.family = family;
  d.rank = rank;
  if (supported(family, rank)) d.cartan_matrix = cartan_matrix_for(family, rank);
  if (automorphism.empty()) {
    automorphism.resize(static_cast<std::size_t>(std::max(rank, 0)));
    std::iota(automorphism.begin(), automorphism.end(), 1);
  }
  d.diagram_automorphism = std::move(automorphism);
  validate(d);
  return d;
}

std::string CartanDatum::name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

std::string type_label(const CartanDatum& d) { return d.split() ? d.name() : d.name() + "^tw"; }

bool CartanDatum::split() const {
  for (std::size_t i = 0; i < diagram_automorphism.size(); ++i)
    if (diagram_automorphism[i] != static_cast<int>(i) + 1) return false;
  return true;
}

void validate(const CartanDatum& d) {
  if (!supported(d.family, d.rank))
    throw ConfigError("unsupported Cartan type " + std::string(1, family_letter(d.family)) + std::to_string(d.rank) +
                      " (supported: A1-A4, B2-B4, C2-C4, D3-D4, G2)");
  const auto r = static_cast<std::size_t>(d.rank);
  if (d.cartan_matrix.size() != r) throw ConfigError("Cartan matrix has wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (d.cartan_matrix[i].size() != r) throw ConfigError("Cartan matrix has wrong size");
    for (std::size_t j = 0; j < r; ++j) {
      const int c = d.cartan_matrix[i][j];
      if (i == j ? c != 2 : c > 0) throw ConfigError("Cartan matrix entries out of range");
    }
  }
  if (d.diagram_automorphism.size() != r) throw ConfigError("diagram automorphism must permute {1..rank}");
  std::vector<bool> seen(r, false);
  for (int v : d.diagram_automorphism) {
    if (v < 1 || v > d.rank || seen[static_cast<std::size_t>(v - 1)])
      throw ConfigError("diagram automorphism must permute {1..rank}");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto si = static_cast<std::size_t>(d.diagram_automorphism[i] - 1);
      const auto sj = static_cast<std::size_t>(d.diagram_automorphism[j] - 1);
      if (d.cartan_matrix[si][sj] != d.cartan_matrix[i][j])
        throw ConfigError("diagram automorphism does not preserve the Cartan matrix");
    }
}

CartanDatum parse_cartan_type(std::string_view text, std::vector<int> automorphism) {
  if (text.size() < 2) throw ConfigError("malformed Cartan type '" + std::string(text) + "'");
  Family family{};
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A': family = Family::A; break;
    case 'B': family = Family::B; break;
    case 'C': family = Family::C; break;
    case 'D': family = Family::D; break;
    case 'G': family = Family::G; break;
    default: throw ConfigError("unknown Cartan family in '" + std::string(text) + "'");
  }
  int rank = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ConfigError("malformed Cartan type '" + std::string(text) + "'");
    rank = rank * 10 + (c - '0');
    if (rank > 64) throw ConfigError("unsupported rank in '" + std::string(text) + "'");
  }
  return CartanDatum::make(family, rank, std::move(automorphism));
}

std::vector<int> standard_diagram_automorphism(Family family, int rank) {
  std::vector<int> sigma(static_cast<std::size_t>(rank));
  std::iota(sigma.begin(), sigma.end(), 1);
  if (family == Family::A && rank >= 2) {
    std::reverse(sigma.begin(), sigma.end());
    return sigma;
  }
  if (family == Family::D) {
    std::swap(sigma[static_cast<std::size_t>(rank - 2)], sigma[static_cast<std::size_t>(rank - 1)]);
    return sigma;
  }
  return {};
}

std::vector<CartanDatum> supported_types(int rank_max) {
  std::vector<CartanDatum> out;
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::G})
    for (int r = 1; r <= rank_max; ++r)
      if (supported(f, r)) out.push_back(CartanDatum::make(f, r));
  return out;
}

std::size_t WeylElementHash::operator()(const WeylElement& w) const noexcept {
  std::size_t h = w.system_tag;
  for (auto v : w.root_permutation) h = h * 131 + v;
  return h;
}

RootSystem::RootSystem(CartanDatum datum) : datum_(std::move(datum)) {
  validate(datum_);
  tag_ = static_cast<std::uint16_t>((static_cast<int>(datum_.family) + 1) << 8 | datum_.rank);
  const auto r = static_cast<std::size_t>(datum_.rank);
  const auto& a = datum_.cartan_matrix;

  auto reflect = [&](const std::vector<int>& beta, std::size_t i) {
    int pairing = 0;  // <beta, alpha_i^vee>
    for (std::size_t j = 0; j < r; ++j) pairing += beta[j] * a[i][j];
    std::vector<int> out = beta;
    out[i] -= pairing;
    return out;
  };

  // Orbit of the simple roots under the simple reflections.
  std::set<std::vector<int>> all;
  std::deque<std::vector<int>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    if (all.insert(e).second) queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      auto img = reflect(beta, i);
      if (all.insert(img).second) queue.push_back(std::move(img));
    }
  }

  std::vector<std::vector<int>> positive;
  for (const auto& beta : all)
    if (std::all_of(beta.begin(), beta.end(), [](int c) { return c >= 0; })) positive.push_back(beta);
  if (positive.size() * 2 != all.size()) throw ConsistencyError("root system is not symmetric under negation");
  std::sort(positive.begin(), positive.end(), [](const auto& x, const auto& y) {
    const int hx = std::accumulate(x.begin(), x.end(), 0);
    const int hy = std::accumulate(y.begin(), y.end(), 0);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  roots_ = positive;
  for (const auto& beta : positive) {
    std::vector<int> neg(beta.size());
    std::transform(beta.begin(), beta.end(), neg.begin(), [](int c) { return -c; });
    roots_.push_back(std::move(neg));
  }
  if (roots_.size() > 255) throw ConfigError("root system too large");

  std::map<std::vector<int>, std::uint8_t> where;
  for (std::size_t k = 0; k < roots_.size(); ++k) where[roots_[k]] = static_cast<std::uint8_t>(k);

  simple_actions_.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    auto& act = simple_actions_[i];
    act.resize(roots_.size());
    for (std::size_t k = 0; k < roots_.size(); ++k) act[k] = where.at(reflect(roots_[k], i));
  }

  automorphism_action_.resize(roots_.size());
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    std::vector<int> img(r, 0);
    for (std::size_t i = 0; i < r; ++i)
      img[static_cast<std::size_t>(datum_.diagram_automorphism[i] - 1)] = roots_[k][i];
    automorphism_action_[k] = where.at(img);
  }
}

const std::vector<std::uint8_t>& RootSystem::simple_reflection_action(int i) const {
  if (i < 1 || i > rank()) throw UsageError("simple reflection index " + std::to_string(i) + " out of range");
  return simple_actions_[static_cast<std::size_t>(i - 1)];
}

WeylElement RootSystem::identity() const {
  WeylElement e;
  e.system_tag = tag_;
  e.root_permutation.resize(roots_.size());
  std::iota(e.root_permutation.begin(), e.root_permutation.end(), std::uint8_t{0});
  return e;
}

WeylElement RootSystem::simple_reflection(int i) const {
  WeylElement s;
  s.system_tag = tag_;
  s.root_permutation = simple_reflection_action(i);
  return s;
}

void RootSystem::check_member(const WeylElement& w) const {
  if (w.system_tag != tag_ || w.root_permutation.size() != roots_.size())
    throw UsageError("Weyl element does not belong to root system " + datum_.name());
}

RootSystem build_root_system(const CartanDatum& datum) { return RootSystem(datum); }

WeylElement multiply(const RootSystem& rs, const WeylElement& a, const WeylElement& b) {
  rs.check_member(a);
  rs.check_member(b);
  return WeylElement{compose(a.root_permutation, b.root_permutation), rs.tag()};
}

WeylElement inverse(const RootSystem& rs, const WeylElement& w) {
  rs.check_member(w);
  WeylElement out{std::vector<std::uint8_t>(w.root_permutation.size()), rs.tag()};
  for (std::size_t k = 0; k < w.root_permutation.size(); ++k) out.root_permutation[w.root_permutation[k]] = static_cast<std::uint8_t>(k);
  return out;
}

int length(const RootSystem& rs, const WeylElement& w) {
  rs.check_member(w);
  int n = 0;
  for (std::size_t k = 0; k < rs.positive_root_count(); ++k)
    if (!rs.is_positive(w.root_permutation[k])) ++n;
  return n;
}

bool has_right_descent(const RootSystem& rs, const WeylElement& w, int i) {
  rs.check_member(w);
  return !rs.is_positive(w.root_permutation[rs.simple_root_index(i)]);
}

bool has_left_descent(const RootSystem& rs, const WeylElement& w, int i) {
  return has_right_descent(rs, inverse(rs, w), i);
}

WeylElement longest_element(const RootSystem& rs) {
  // Keep multiplying by a simple reflection that is not yet a right descent.
  WeylElement w = rs.identity();
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 1; i <= rs.rank(); ++i) {
      if (!has_right_descent(rs, w, i)) {
        w = multiply(rs, w, rs.simple_reflection(i));
        grew = true;
        break;
      }
    }
  }
  return w;
}

std::vector<int> reduced_word(const RootSystem& rs, const WeylElement& w) {
  std::vector<int> word;
  WeylElement cur = w;
  while (true) {
    int found = 0;
    for (int i = 1; i <= rs.rank(); ++i)
      if (has_left_descent(rs, cur, i)) {
        found = i;
        break;
      }
    if (found == 0) break;
    word.push_back(found);
    cur = multiply(rs, rs.simple_reflection(found), cur);
  }
  return word;
}

WeylElement from_word(const RootSystem& rs, std::span<const int> word) {
  WeylElement w = rs.identity();
  for (int i : word) w = multiply(rs, w, rs.simple_reflection(i));
  return w;
}

bool bruhat_leq(const RootSystem& rs, const WeylElement& u, const WeylElement& w) {
  rs.check_member(u);
  rs.check_member(w);
  WeylElement cu = u;
  WeylElement cw = w;
  while (true) {
    int s = 0;
    for (int i = 1; i <= rs.rank(); ++i)
      if (has_right_descent(rs, cw, i)) {
        s = i;
        break;
      }
    if (s == 0) return cu == cw;
    if (has_right_descent(rs, cu, s)) cu = multiply(rs, cu, rs.simple_reflection(s));
    cw = multiply(rs, cw, rs.simple_reflection(s));
  }
}

WeylElement apply_frobenius(const RootSystem& rs, const WeylElement& w) {
  rs.check_member(w);
  const auto& sigma = rs.automorphism_action();
  std::vector<std::uint8_t> sigma_inv(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) sigma_inv[sigma[k]] = static_cast<std::uint8_t>(k);
  return WeylElement{compose(compose(sigma, w.root_permutation), sigma_inv), rs.tag()};
}

std::vector<WeylElement> enumerate(const RootSystem& rs, std::size_t cap) {
  std::vector<WeylElement> out{rs.identity()};
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> seen{{out.front(), 0}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i = 1; i <= rs.rank(); ++i) {
      auto next = multiply(rs, out[head], rs.simple_reflection(i));
      if (seen.contains(next)) continue;
      if (out.size() >= cap)
        throw ResourceError("Weyl group of " + rs.datum().name() + " exceeds enumeration cap " + std::to_string(cap));
      seen.emplace(next, out.size());
      out.push_back(std::move(next));
    }
  }
  return out;
}

WeylGroup::WeylGroup(RootSystem rs, std::size_t cap) : rs_(std::move(rs)) {
  elements_ = enumerate(rs_, cap);
  const std::size_t n = elements_.size();
  index_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) index_.emplace(elements_[k], static_cast<ElemId>(k));

  for (int i = 1; i <= rank(); ++i) simple_.push_back(id_of(rs_.simple_reflection(i)));

  length_.resize(n);
  inverse_.resize(n);
  frobenius_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    length_[k] = zipstrata::length(rs_, elements_[k]);
    inverse_[k] = id_of(zipstrata::inverse(rs_, elements_[k]));
    frobenius_[k] = id_of(apply_frobenius(rs_, elements_[k]));
  }
  longest_ = static_cast<ElemId>(std::max_element(length_.begin(), length_.end()) - length_.begin());

  mul_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mul_[a * n + b] = id_of(WeylElement{compose(elements_[a].root_permutation, elements_[b].root_permutation), rs_.tag()});

  // Bruhat table, filled column by column in order of increasing length of w.
  bruhat_.assign(n * n, 0);
  std::vector<ElemId> by_length(n);
  std::iota(by_length.begin(), by_length.end(), ElemId{0});
  std::stable_sort(by_length.begin(), by_length.end(), [&](ElemId x, ElemId y) { return length_[x] < length_[y]; });
  for (ElemId w : by_length) {
    if (w == identity()) {
      bruhat_[identity() * n + w] = 1;
      continue;
    }
    int s = 0;
    for (int i = 1; i <= rank(); ++i)
      if (has_right_descent(w, i)) {
        s = i;
        break;
      }
    const ElemId ws = mul(w, simple(s));
    for (ElemId u = 0; u < n; ++u) {
      const ElemId us = mul(u, simple(s));
      const ElemId m = length_[us] < length_[u] ? us : u;
      bruhat_[u * n + w] = bruhat_[m * n + ws];
    }
  }
}

ElemId WeylGroup::id_of(const WeylElement& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw UsageError("element does not belong to the Weyl group of " + rs_.datum().name());
  return it->second;
}

bool WeylGroup::has_left_descent(ElemId w, int i) const { return length_[mul(simple(i), w)] < length_[w]; }

bool WeylGroup::has_right_descent(ElemId w, int i) const { return length_[mul(w, simple(i))] < length_[w]; }

std::vector<int> WeylGroup::reduced_word(ElemId w) const {
  std::vector<int> word;
  while (w != identity()) {
    for (int i = 1; i <= rank(); ++i)
      if (has_left_descent(w, i)) {
        word.push_back(i);
        w = mul(simple(i), w);
        break;
      }
  }
  return word;
}

ElemId WeylGroup::from_word(std::span<const int> word) const {
  ElemId w = identity();
  for (int i : word) {
    if (i < 1 || i > rank()) throw UsageError("simple reflection index " + std::to_string(i) + " out of range");
    w = mul(w, simple(i));
  }
  return w;
}

std::string WeylGroup::word_string(ElemId w) const {
  const auto word = reduced_word(w);
  if (word.empty()) return "e";
  std::ostringstream os;
  for (int i : word) os << 's' << i;
  return os.str();
}

WeylGroupPtr make_weyl_group(const CartanDatum& datum, std::size_t cap) {
  return std::make_shared<const WeylGroup>(RootSystem(datum), cap);
}

}  // namespace zipstrata

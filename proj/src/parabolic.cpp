#include "zipstrata/parabolic.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "zipstrata/errors.hpp"

namespace zipstrata {

TypeSubset::TypeSubset(int rank, const std::vector<int>& indices) : rank_(rank) {
  for (int i : indices) {
    if (i < 1 || i > rank)
      throw ConfigError("simple reflection index " + std::to_string(i) + " outside {1.." + std::to_string(rank) + "}");
    mask_ |= 1u << (i - 1);
  }
}

TypeSubset TypeSubset::from_mask(int rank, std::uint32_t mask) {
  if (rank < 0 || rank > 31 || (mask >> rank) != 0) throw ConfigError("subset mask out of range");
  TypeSubset t;
  t.rank_ = rank;
  t.mask_ = mask;
  return t;
}

std::vector<int> TypeSubset::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= rank_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::size_t TypeSubset::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::string TypeSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : indices()) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<TypeSubset> all_subsets(int rank) {
  std::vector<TypeSubset> out;
  for (std::uint32_t m = 0; m < (1u << rank); ++m) out.push_back(TypeSubset::from_mask(rank, m));
  return out;
}

TypeSubset frobenius_type(const WeylGroup& g, const TypeSubset& I) {
  const auto& sigma = g.root_system().datum().diagram_automorphism;
  std::vector<int> out;
  for (int i : I.indices()) out.push_back(sigma[static_cast<std::size_t>(i - 1)]);
  return TypeSubset(g.rank(), out);
}

TypeSubset opposite_type(const WeylGroup& g, const TypeSubset& I) {
  std::vector<int> out;
  const ElemId w0 = g.longest();
  for (int i : I.indices()) {
    const ElemId c = g.mul(w0, g.simple(i), w0);
    for (int j = 1; j <= g.rank(); ++j)
      if (g.simple(j) == c) out.push_back(j);
  }
  if (out.size() != I.size()) throw ConsistencyError("conjugation by w0 does not preserve the simple reflections");
  return TypeSubset(g.rank(), out);
}

std::pair<ElemId, ElemId> decompose_left(const WeylGroup& g, ElemId w, const TypeSubset& I) {
  // Strip left descents lying in I; what is stripped accumulates into w_I.
  ElemId part = g.identity();
  ElemId rest = w;
  for (bool again = true; again;) {
    again = false;
    for (int i : I.indices())
      if (g.has_left_descent(rest, i)) {
        rest = g.mul(g.simple(i), rest);
        part = g.mul(part, g.simple(i));
        again = true;
        break;
      }
  }
  return {part, rest};
}

std::pair<ElemId, ElemId> decompose_right(const WeylGroup& g, ElemId w, const TypeSubset& I) {
  ElemId part = g.identity();
  ElemId rest = w;
  for (bool again = true; again;) {
    again = false;
    for (int i : I.indices())
      if (g.has_right_descent(rest, i)) {
        rest = g.mul(rest, g.simple(i));
        part = g.mul(g.simple(i), part);
        again = true;
        break;
      }
  }
  return {rest, part};
}

bool in_parabolic(const WeylGroup& g, ElemId w, const TypeSubset& I) {
  return decompose_left(g, w, I).second == g.identity();
}

bool is_left_minimal(const WeylGroup& g, ElemId w, const TypeSubset& I) {
  for (int i : I.indices())
    if (g.has_left_descent(w, i)) return false;
  return true;
}

bool is_right_minimal(const WeylGroup& g, ElemId w, const TypeSubset& I) {
  for (int i : I.indices())
    if (g.has_right_descent(w, i)) return false;
  return true;
}

CosetSystem coset_system(const WeylGroup& g, const TypeSubset& I) {
  if (I.rank() != g.rank()) throw ConfigError("subset rank does not match the root system");
  CosetSystem cs;
  cs.I = I;
  cs.w0 = g.longest();
  const std::size_t n = g.order();
  cs.in_W_I.assign(n, false);
  cs.in_left.assign(n, false);
  cs.in_right.assign(n, false);
  // Element ids are already in non-decreasing length order.
  for (ElemId w = 0; w < n; ++w) {
    if (in_parabolic(g, w, I)) {
      cs.in_W_I[w] = true;
      cs.w_I_elements.push_back(w);
    }
    if (is_left_minimal(g, w, I)) {
      cs.in_left[w] = true;
      cs.left_reps.push_back(w);
    }
    if (is_right_minimal(g, w, I)) {
      cs.in_right[w] = true;
      cs.right_reps.push_back(w);
    }
  }
  cs.w_I0 = cs.w_I_elements.back();
  cs.upper_I_w0 = cs.left_reps.back();
  cs.w0_upper_I = cs.right_reps.back();

  auto fail = [&](const std::string& what) {
    throw ConsistencyError("coset system for " + g.root_system().datum().name() + ", I=" + I.to_string() + ": " + what);
  };
  if (cs.w_I_elements.size() * cs.left_reps.size() != n) fail("|W_I| |^I W| != |W|");
  if (cs.w_I_elements.size() * cs.right_reps.size() != n) fail("|W_I| |W^I| != |W|");
  if (g.mul(cs.w_I0, cs.upper_I_w0) != cs.w0) fail("w_{I,0} ^I w0 != w0");
  if (g.mul(cs.w0_upper_I, cs.w_I0) != cs.w0) fail("w0^I w_{I,0} != w0");
  const auto top = [&](const std::vector<ElemId>& v) {
    return std::count_if(v.begin(), v.end(), [&](ElemId x) { return g.length(x) == g.length(v.back()); });
  };
  if (top(cs.w_I_elements) != 1 || top(cs.left_reps) != 1 || top(cs.right_reps) != 1)
    fail("longest element is not unique");
  return cs;
}

}  // namespace zipstrata

#include "zipstrata/finite_field.hpp"

#include <sstream>
#include <stdexcept>

#include "zipstrata/errors.hpp"

namespace zipstrata::fq {

std::vector<int> conway_polynomial(int p, int degree) {
  // Lübeck's table, constant term first.
  switch (p * 100 + degree) {
    case 201: return {1, 1};
    case 202: return {1, 1, 1};
    case 203: return {1, 1, 0, 1};
    case 204: return {1, 1, 0, 0, 1};
    case 205: return {1, 0, 1, 0, 0, 1};
    case 206: return {1, 1, 0, 1, 1, 0, 1};
    case 301: return {1, 1};
    case 302: return {2, 2, 1};
    case 303: return {1, 2, 0, 1};
    case 501: return {3, 1};
    case 502: return {2, 4, 1};
    default: break;
  }
  throw ConfigError("no pinned field modulus for p=" + std::to_string(p) + ", degree " + std::to_string(degree) +
                    " (need p in {2,3,5} and p^degree <= 64)");
}

namespace {

std::vector<int> digits(int v, int p, int d) {
  std::vector<int> c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    c[static_cast<std::size_t>(i)] = v % p;
    v /= p;
  }
  return c;
}

int encode(const std::vector<int>& c, int p) {
  int v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * p + *it;
  return v;
}

}  // namespace

Field::Field(int p, int degree) : p_(p), degree_(degree) {
  if (degree < 1) throw ConfigError("field degree must be positive");
  modulus_ = conway_polynomial(p, degree);
  q_ = 1;
  for (int i = 0; i < degree; ++i) q_ *= p;
  if (q_ > kMaxFieldSize) throw ConfigError("field size exceeds 64");
  const auto q = static_cast<std::size_t>(q_);

  add_.resize(q * q);
  neg_.resize(q);
  for (int a = 0; a < q_; ++a) {
    const auto ca = digits(a, p, degree);
    std::vector<int> cn(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) cn[i] = (p - ca[i]) % p;
    neg_[static_cast<std::size_t>(a)] = static_cast<Elt>(encode(cn, p));
    for (int b = 0; b < q_; ++b) {
      const auto cb = digits(b, p, degree);
      std::vector<int> cs(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) cs[i] = (ca[i] + cb[i]) % p;
      add_[static_cast<std::size_t>(a * q_ + b)] = static_cast<Elt>(encode(cs, p));
    }
  }

  // Powers of x modulo the Conway polynomial; x is primitive by construction.
  auto times_x = [&](const std::vector<int>& c) {
    std::vector<int> s(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) s[i + 1] = c[i];
    const int lead = s.back();
    for (std::size_t i = 0; i < c.size(); ++i) s[i] = ((s[i] - lead * modulus_[i]) % p + p) % p;
    s.pop_back();
    return s;
  };
  antilog_.assign(q, 0);
  log_.assign(q, -1);
  std::vector<int> cur(static_cast<std::size_t>(degree), 0);
  cur[0] = 1;
  for (int k = 0; k < q_ - 1; ++k) {
    const int v = encode(cur, p);
    if (log_[static_cast<std::size_t>(v)] != -1) throw ConsistencyError("field modulus is not primitive");
    log_[static_cast<std::size_t>(v)] = k;
    antilog_[static_cast<std::size_t>(k)] = static_cast<Elt>(v);
    cur = times_x(cur);
  }
  if (encode(cur, p) != 1) throw ConsistencyError("field modulus is not primitive");

  mul_.assign(q * q, 0);
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      mul_[static_cast<std::size_t>(a * q_ + b)] =
          antilog_[static_cast<std::size_t>((log_[static_cast<std::size_t>(a)] + log_[static_cast<std::size_t>(b)]) % (q_ - 1))];

  frob_.resize(q);
  for (int a = 0; a < q_; ++a) frob_[static_cast<std::size_t>(a)] = pow(static_cast<Elt>(a), p);
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return antilog_[static_cast<std::size_t>((q_ - 1 - log_[a]) % (q_ - 1))];
}

Elt Field::pow(Elt a, long long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const long long order = q_ - 1;
  long long k = (static_cast<long long>(log_[a]) * (e % order)) % order;
  if (k < 0) k += order;
  return antilog_[static_cast<std::size_t>(k)];
}

Elt Field::from_int(long long v) const {
  const long long r = ((v % p_) + p_) % p_;
  return static_cast<Elt>(r);
}

bool Field::in_subfield(Elt a, int sub) const {
  Elt x = a;
  for (int i = 0; i < sub; ++i) x = frob_[x];
  return x == a;
}

std::vector<Elt> Field::subfield(int sub) const {
  if (sub < 1 || degree_ % sub != 0)
    throw ConfigError("F_" + std::to_string(p_) + "^" + std::to_string(sub) + " is not a subfield");
  std::vector<Elt> out;
  for (int a = 0; a < q_; ++a)
    if (in_subfield(static_cast<Elt>(a), sub)) out.push_back(static_cast<Elt>(a));
  return out;
}

Elt Field::subfield_generator(int sub) const {
  if (sub < 1 || degree_ % sub != 0) throw ConfigError("not a subfield degree");
  long long sub_size = 1;
  for (int i = 0; i < sub; ++i) sub_size *= p_;
  return pow(generator(), (q_ - 1) / (sub_size - 1));
}

std::vector<Elt> Field::subfield_basis(int sub) const {
  std::vector<Elt> out;
  const Elt g = subfield_generator(sub);
  Elt cur = 1;
  for (int i = 0; i < sub; ++i) {
    out.push_back(cur);
    cur = mul(cur, g);
  }
  return out;
}

std::string Field::to_string(Elt a) const {
  if (degree_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  return "g^" + std::to_string(log_[a]);
}

Matrix Matrix::identity(int n) {
  Matrix m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix mat_mul(const Field& F, const Matrix& x, const Matrix& y) {
  Matrix z;
  z.n = x.n;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      Elt s = 0;
      for (int k = 0; k < x.n; ++k) s = F.add(s, F.mul(x.at(i, k), y.at(k, j)));
      z.at(i, j) = s;
    }
  return z;
}

Elt det(const Field& F, const Matrix& x) {
  Matrix m = x;
  const int n = x.n;
  Elt d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(c, c));
    const Elt inv = F.inv(m.at(c, c));
    for (int r = c + 1; r < n; ++r) {
      const Elt f = F.mul(m.at(r, c), inv);
      if (f == 0) continue;
      for (int j = c; j < n; ++j) m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(c, j)));
    }
  }
  return d;
}

std::optional<Matrix> mat_inverse(const Field& F, const Matrix& x) {
  const int n = x.n;
  Matrix m = x;
  Matrix inv = Matrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      std::swap(m.at(piv, j), m.at(c, j));
      std::swap(inv.at(piv, j), inv.at(c, j));
    }
    const Elt s = F.inv(m.at(c, c));
    for (int j = 0; j < n; ++j) {
      m.at(c, j) = F.mul(s, m.at(c, j));
      inv.at(c, j) = F.mul(s, inv.at(c, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      const Elt f = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(c, j)));
        inv.at(r, j) = F.sub(inv.at(r, j), F.mul(f, inv.at(c, j)));
      }
    }
  }
  return inv;
}

Matrix mat_frobenius(const Field& F, const Matrix& x) {
  Matrix y = x;
  for (int k = 0; k < x.n * x.n; ++k) y.a[static_cast<std::size_t>(k)] = F.frobenius(x.a[static_cast<std::size_t>(k)]);
  return y;
}

std::uint64_t mat_key(const Field& F, const Matrix& x) {
  std::uint64_t key = 0;
  for (int k = x.n * x.n - 1; k >= 0; --k) key = key * static_cast<std::uint64_t>(F.size()) + x.a[static_cast<std::size_t>(k)];
  return key;
}

std::string mat_to_string(const Field& F, const Matrix& x) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < x.n; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < x.n; ++j) os << (j ? " " : "") << F.to_string(x.at(i, j));
  }
  os << ']';
  return os.str();
}

int row_rank(const Field& F, std::vector<std::vector<Elt>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& pr = rows[static_cast<std::size_t>(rank)];
    const Elt inv = F.inv(pr[c]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      const Elt f = F.mul(rows[r][c], inv);
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, pr[j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace zipstrata::fq

#include "frobcoh/bigraded_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>

#include "frobcoh/error.hpp"

namespace frobcoh {

namespace {

// C(n, k) mod p via Lucas; each digit binomial uses the multiplicative formula.
std::uint32_t binomial_mod(std::int64_t n, std::int64_t k, std::uint32_t p) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const auto nd = static_cast<std::uint32_t>(n % p);
    const auto kd = static_cast<std::uint32_t>(k % p);
    if (kd > nd) return 0;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint32_t j = 0; j < kd; ++j) {
      num = num * (nd - j) % p;
      den = den * (j + 1) % p;
    }
    result = result * num % p * inverse_mod(static_cast<Residue>(den), p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

void check_vars(const BiMonomial& m, int vars) {
  if (static_cast<int>(m.x.size()) != vars || static_cast<int>(m.y.size()) != vars) {
    throw Error(ErrorKind::InvalidParams, "monomial has wrong number of variables");
  }
}

}  // namespace

RingParams RingParams::make(std::uint32_t p, int n) {
  if (!is_prime(p) || p > 255) {
    throw Error(ErrorKind::InvalidParams, "p = " + std::to_string(p) + " is not a supported prime");
  }
  if (n - 1 < 2 || static_cast<std::int64_t>(p) < n - 1) {
    throw Error(ErrorKind::InvalidParams, "need p >= n-1 >= 2, got p = " + std::to_string(p) +
                                              ", n = " + std::to_string(n));
  }
  return RingParams{p, n};
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::vector<Exponents> monomials_of_degree(int vars, int degree) {
  std::vector<Exponents> out;
  if (degree < 0 || vars <= 0) return out;
  out.reserve(static_cast<std::size_t>(binomial(degree + vars - 1, vars - 1)));
  Exponents e(static_cast<std::size_t>(vars), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == e.size()) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::pair<int, int> BiMonomial::bidegree() const {
  int a = 0;
  int b = 0;
  for (int e : x) a += e;
  for (int e : y) b += e;
  return {a, b};
}

BiMonomial BiMonomial::operator*(const BiMonomial& other) const {
  BiMonomial out = *this;
  for (std::size_t i = 0; i < x.size(); ++i) out.x[i] += other.x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out.y[i] += other.y[i];
  return out;
}

std::size_t BiMonomialHash::operator()(const BiMonomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](int e) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (int e : m.x) mix(e);
  for (int e : m.y) mix(e);
  return h;
}

BiPoly::BiPoly(std::uint32_t p, int vars, std::pair<int, int> bidegree)
    : p_(p), vars_(vars), bidegree_(bidegree) {}

BiPoly BiPoly::monomial(std::uint32_t p, const BiMonomial& m, std::int64_t coeff) {
  BiPoly f(p, static_cast<int>(m.x.size()), m.bidegree());
  f.add_term(m, coeff);
  return f;
}

void BiPoly::add_term(const BiMonomial& m, std::int64_t coeff) {
  check_vars(m, vars_);
  if (m.bidegree() != bidegree_) {
    throw Error(ErrorKind::DegreeMismatch, "term bidegree differs from polynomial bidegree");
  }
  const Residue c = reduce_mod(coeff, p_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = static_cast<Residue>((it->second + c) % p_);
  if (it->second == 0) terms_.erase(it);
}

BiPoly BiPoly::operator+(const BiPoly& other) const {
  if (other.bidegree_ != bidegree_ || other.p_ != p_ || other.vars_ != vars_) {
    throw Error(ErrorKind::DegreeMismatch, "sum of polynomials of different bidegree");
  }
  BiPoly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

BiPoly BiPoly::operator*(const BiPoly& other) const {
  if (other.p_ != p_ || other.vars_ != vars_) {
    throw Error(ErrorKind::InvalidParams, "product of polynomials over different rings");
  }
  BiPoly out(p_, vars_, {bidegree_.first + other.bidegree_.first,
                         bidegree_.second + other.bidegree_.second});
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : other.terms_) {
      out.add_term(m1 * m2, static_cast<std::int64_t>(c1) * c2);
    }
  }
  return out;
}

BiPoly BiPoly::pow(unsigned e) const {
  BiMonomial unit{Exponents(static_cast<std::size_t>(vars_), 0),
                  Exponents(static_cast<std::size_t>(vars_), 0)};
  BiPoly out = monomial(p_, unit, 1);
  for (unsigned k = 0; k < e; ++k) out = out * *this;
  return out;
}

BigradedRing::BigradedRing(RingParams params, int degree_cap)
    : params_(params), degree_cap_(degree_cap) {
  if (!is_prime(params.p) || params.p > 255) {
    throw Error(ErrorKind::InvalidParams, "unsupported prime " + std::to_string(params.p));
  }
  if (params.n < 1) throw Error(ErrorKind::UnsupportedDimension, "n must be positive");
  if (degree_cap < 0) throw Error(ErrorKind::InvalidParams, "negative degree cap");
}

void BigradedRing::check_degree(int a, int b) const {
  if (std::abs(a) > degree_cap_ || std::abs(b) > degree_cap_) {
    throw Error(ErrorKind::InvalidParams, "bidegree (" + std::to_string(a) + "," +
                                              std::to_string(b) + ") exceeds degree cap " +
                                              std::to_string(degree_cap_));
  }
}

std::int64_t BigradedRing::dim_S(int a, int b) const {
  if (a < 0 || b < 0) return 0;
  return binomial(a + n(), n()) * binomial(b + n(), n());
}

const BigradedRing::Basis& BigradedRing::basis(int a, int b) const {
  static const Basis empty;
  if (a < 0 || b < 0) return empty;
  check_degree(a, b);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find({a, b}); it != cache_.end()) return *it->second;
  }
  auto fresh = std::make_unique<Basis>();
  const auto xs = monomials_of_degree(vars(), a);
  const auto ys = monomials_of_degree(vars(), b);
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (x[0] > 0 && y[0] > 0) continue;
      fresh->index.emplace(BiMonomial{x, y}, fresh->monomials.size());
      fresh->monomials.push_back(BiMonomial{x, y});
    }
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.try_emplace({a, b}, std::move(fresh));
  return *it->second;
}

const std::vector<BiMonomial>& BigradedRing::basis_R(int a, int b) const {
  return basis(a, b).monomials;
}

std::optional<std::size_t> BigradedRing::index_in_R(int a, int b, const BiMonomial& m) const {
  const auto& idx = basis(a, b).index;
  if (auto it = idx.find(m); it != idx.end()) return it->second;
  return std::nullopt;
}

// x_0^i y_0^j r with k = min(i,j) equals (-s)^k x_0^(i-k) y_0^(j-k) r in R, where
// s = x_1 y_1 + ... + x_n y_n.  Expanding s^k multinomially leaves only
// monomials free of x_0 y_0, so one pass reaches the normal form.
void BigradedRing::reduce_into(const BiMonomial& m, std::uint32_t coeff,
                               std::map<BiMonomial, std::uint32_t, std::greater<>>& out) const {
  const std::uint32_t p = params_.p;
  auto accumulate = [&](const BiMonomial& t, std::uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = out.try_emplace(t, c);
    if (!inserted) {
      it->second = (it->second + c) % p;
      if (it->second == 0) out.erase(it);
    }
  };
  const int k = std::min(m.x[0], m.y[0]);
  if (k == 0) {
    accumulate(m, coeff % p);
    return;
  }
  BiMonomial base = m;
  base.x[0] -= k;
  base.y[0] -= k;
  const std::uint32_t sign = (k % 2 == 0) ? 1 : p - 1;
  const std::uint32_t lead = static_cast<std::uint32_t>(coeff % p) * sign % p;
  const int nn = n();
  std::vector<int> e(static_cast<std::size_t>(nn) + 1, 0);
  auto rec = [&](auto&& self, int i, int left, std::uint32_t c) -> void {
    if (c == 0) return;
    if (i == nn) {
      e[static_cast<std::size_t>(i)] = left;
      BiMonomial t = base;
      for (int v = 1; v <= nn; ++v) {
        t.x[static_cast<std::size_t>(v)] += e[static_cast<std::size_t>(v)];
        t.y[static_cast<std::size_t>(v)] += e[static_cast<std::size_t>(v)];
      }
      accumulate(t, c);
      return;
    }
    for (int j = left; j >= 0; --j) {
      e[static_cast<std::size_t>(i)] = j;
      self(self, i + 1, left - j, c * binomial_mod(left, j, p) % p);
    }
  };
  rec(rec, 1, k, lead);
}

BiPoly BigradedRing::normal_form(const BiPoly& f) const {
  if (f.prime() != p() || f.vars() != vars()) {
    throw Error(ErrorKind::InvalidParams, "polynomial does not belong to this ring");
  }
  std::map<BiMonomial, std::uint32_t, std::greater<>> acc;
  for (const auto& [m, c] : f.terms()) reduce_into(m, c, acc);
  BiPoly out(p(), vars(), f.bidegree());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

SparseFpMatrix BigradedRing::mult_matrix_sparse(const BiPoly& g, int a, int b) const {
  if (g.prime() != p() || g.vars() != vars()) {
    throw Error(ErrorKind::InvalidParams, "polynomial does not belong to this ring");
  }
  const auto [d1, d2] = g.bidegree();
  const auto& source = basis(a, b);
  const auto& target = basis(a + d1, b + d2);
  SparseFpMatrix out(p(), target.monomials.size(), source.monomials.size());
  if (target.monomials.empty()) return out;
  std::map<BiMonomial, std::uint32_t, std::greater<>> acc;
  for (std::size_t col = 0; col < source.monomials.size(); ++col) {
    acc.clear();
    for (const auto& [m, c] : g.terms()) reduce_into(source.monomials[col] * m, c, acc);
    SparseVector v;
    v.reserve(acc.size());
    // Descending monomial order is ascending basis index.
    for (const auto& [m, c] : acc) {
      v.push_back({static_cast<std::uint32_t>(target.index.at(m)), static_cast<Residue>(c)});
    }
    out.set_column(col, std::move(v));
  }
  return out;
}

FpMatrix BigradedRing::mult_matrix(const BiPoly& g, int a, int b) const {
  return mult_matrix_sparse(g, a, b).to_dense();
}

BiMonomial BigradedRing::unit_monomial() const {
  return BiMonomial{Exponents(static_cast<std::size_t>(vars()), 0),
                    Exponents(static_cast<std::size_t>(vars()), 0)};
}

BiPoly BigradedRing::one() const { return BiPoly::monomial(p(), unit_monomial(), 1); }

BiPoly BigradedRing::q() const {
  BiPoly out(p(), vars(), {1, 1});
  for (int i = 0; i < vars(); ++i) {
    BiMonomial m = unit_monomial();
    m.x[static_cast<std::size_t>(i)] = 1;
    m.y[static_cast<std::size_t>(i)] = 1;
    out.add_term(m, 1);
  }
  return out;
}

BiPoly BigradedRing::x_power(int i, int e) const {
  BiMonomial m = unit_monomial();
  m.x.at(static_cast<std::size_t>(i)) = e;
  return BiPoly::monomial(p(), m, 1);
}

BiPoly BigradedRing::y_power(int i, int e) const {
  BiMonomial m = unit_monomial();
  m.y.at(static_cast<std::size_t>(i)) = e;
  return BiPoly::monomial(p(), m, 1);
}

}  // namespace frobcoh

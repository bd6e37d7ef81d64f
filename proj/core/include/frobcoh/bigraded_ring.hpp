#pragma once

// The bigraded ring S = F_p[x_0..x_n; y_0..y_n] and its quotient
// R = S/(q), q = sum x_i y_i, the coordinate ring of the incidence
// hypersurface Y in P^n x P^n.
//
// Monomials are ordered lexicographically with x_0 > ... > x_n > y_0 > ... > y_n,
// so the leading monomial of q is x_0 y_0.  A single generator is always a
// Groebner basis of its ideal, hence the monomials not divisible by x_0 y_0
// form a basis of every bidegree piece R_(a,b).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobcoh/fp_matrix.hpp"

namespace frobcoh {

struct RingParams {
  std::uint32_t p = 2;
  int n = 3;

  /// Enforces p prime and p >= n - 1 >= 2.
  static RingParams make(std::uint32_t p, int n);
};

using Exponents = std::vector<int>;

/// Binomial coefficient; zero when k < 0 or k > n.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Exponent vectors of length `vars` and total degree `degree`, descending lex.
/// Empty for negative degree.
std::vector<Exponents> monomials_of_degree(int vars, int degree);

struct BiMonomial {
  Exponents x;
  Exponents y;

  std::pair<int, int> bidegree() const;
  bool divisible_by_x0y0() const { return x[0] > 0 && y[0] > 0; }
  BiMonomial operator*(const BiMonomial& other) const;

  auto operator<=>(const BiMonomial&) const = default;
};

struct BiMonomialHash {
  std::size_t operator()(const BiMonomial& m) const noexcept;
};

/// Bihomogeneous polynomial with coefficients in F_p.  Terms are kept in
/// descending monomial order and never store a zero coefficient.
class BiPoly {
 public:
  using Terms = std::map<BiMonomial, Residue, std::greater<>>;

  BiPoly(std::uint32_t p, int vars, std::pair<int, int> bidegree);
  static BiPoly monomial(std::uint32_t p, const BiMonomial& m, std::int64_t coeff = 1);

  std::uint32_t prime() const { return p_; }
  int vars() const { return vars_; }
  std::pair<int, int> bidegree() const { return bidegree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Throws Error(DegreeMismatch) when m has the wrong bidegree.
  void add_term(const BiMonomial& m, std::int64_t coeff);

  BiPoly operator+(const BiPoly& other) const;
  BiPoly operator*(const BiPoly& other) const;
  BiPoly pow(unsigned e) const;

  bool operator==(const BiPoly&) const = default;

 private:
  std::uint32_t p_;
  int vars_;
  std::pair<int, int> bidegree_;
  Terms terms_;
};

class BigradedRing {
 public:
  explicit BigradedRing(RingParams params, int degree_cap = 32);

  const RingParams& params() const { return params_; }
  std::uint32_t p() const { return params_.p; }
  int n() const { return params_.n; }
  int vars() const { return params_.n + 1; }
  int degree_cap() const { return degree_cap_; }

  /// Throws Error(InvalidParams) when |a| or |b| exceeds the degree cap.
  void check_degree(int a, int b) const;

  /// dim S_(a,b) = C(a+n, n) C(b+n, n), zero for negative degrees.
  std::int64_t dim_S(int a, int b) const;

  /// Monomials of bidegree (a,b) not divisible by x_0 y_0, descending lex.
  const std::vector<BiMonomial>& basis_R(int a, int b) const;
  std::optional<std::size_t> index_in_R(int a, int b, const BiMonomial& m) const;

  /// Image of f in R written on basis_R; rewrites x_0 y_0 -> -(x_1 y_1 + ... + x_n y_n)
  /// until no term is divisible by x_0 y_0.
  BiPoly normal_form(const BiPoly& f) const;

  /// Matrix of multiplication by g from R_(a,b) to R_(a+d1, b+d2);
  /// rows index the target basis, columns the source basis.
  FpMatrix mult_matrix(const BiPoly& g, int a, int b) const;
  SparseFpMatrix mult_matrix_sparse(const BiPoly& g, int a, int b) const;

  BiPoly one() const;
  BiPoly q() const;
  BiPoly x_power(int i, int e) const;
  BiPoly y_power(int i, int e) const;
  BiMonomial unit_monomial() const;

 private:
  struct Basis {
    std::vector<BiMonomial> monomials;
    std::unordered_map<BiMonomial, std::size_t, BiMonomialHash> index;
  };
  const Basis& basis(int a, int b) const;
  void reduce_into(const BiMonomial& m, std::uint32_t coeff,
                   std::map<BiMonomial, std::uint32_t, std::greater<>>& out) const;

  RingParams params_;
  int degree_cap_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<const Basis>> cache_;
};

}  // namespace frobcoh

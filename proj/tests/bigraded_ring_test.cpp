#include <gtest/gtest.h>

#include <random>
#include <set>

#include "frobcoh/bigraded_ring.hpp"
#include "frobcoh/error.hpp"

namespace frobcoh {
namespace {

// Odometer over all exponent tuples bounded by the degree, kept when the sum matches.
std::size_t count_monomials(int vars, int degree) {
  if (degree < 0) return 0;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  std::size_t count = 0;
  while (true) {
    int sum = 0;
    for (int v : e) sum += v;
    if (sum == degree) ++count;
    std::size_t i = 0;
    while (i < e.size() && ++e[i] > degree) e[i++] = 0;
    if (i == e.size()) break;
  }
  return count;
}

// One rewrite x0y0 -> -(x1y1 + ... + xnyn) at a time, largest term first.
BiPoly naive_reduce(const BigradedRing& ring, const BiPoly& f) {
  BiPoly work = f;
  while (true) {
    const BiMonomial* hit = nullptr;
    for (const auto& [m, c] : work.terms()) {
      if (m.divisible_by_x0y0()) {
        hit = &m;
        break;
      }
    }
    if (hit == nullptr) return work;
    const BiMonomial m = *hit;
    const Residue c = work.terms().at(m);
    BiMonomial base = m;
    base.x[0] -= 1;
    base.y[0] -= 1;
    BiPoly step(ring.p(), ring.vars(), f.bidegree());
    step.add_term(m, -static_cast<std::int64_t>(c));
    for (int i = 1; i < ring.vars(); ++i) {
      BiMonomial t = base;
      t.x[static_cast<std::size_t>(i)] += 1;
      t.y[static_cast<std::size_t>(i)] += 1;
      step.add_term(t, -static_cast<std::int64_t>(c));
    }
    work = work + step;
  }
}

BiMonomial random_monomial(std::mt19937& rng, int vars, int a, int b) {
  BiMonomial m{Exponents(static_cast<std::size_t>(vars), 0), Exponents(static_cast<std::size_t>(vars), 0)};
  std::uniform_int_distribution<int> pick(0, vars - 1);
  for (int k = 0; k < a; ++k) ++m.x[static_cast<std::size_t>(pick(rng))];
  for (int k = 0; k < b; ++k) ++m.y[static_cast<std::size_t>(pick(rng))];
  return m;
}

BiPoly random_poly(std::mt19937& rng, const BigradedRing& ring, int a, int b, int terms) {
  std::uniform_int_distribution<int> coeff(1, static_cast<int>(ring.p()) - 1);
  BiPoly f(ring.p(), ring.vars(), {a, b});
  for (int t = 0; t < terms; ++t) f.add_term(random_monomial(rng, ring.vars(), a, b), coeff(rng));
  return f;
}

TEST(RingParams, EnforcesStandingHypothesis) {
  EXPECT_NO_THROW(RingParams::make(2, 3));
  EXPECT_NO_THROW(RingParams::make(3, 4));
  EXPECT_THROW(RingParams::make(2, 4), Error);
  EXPECT_THROW(RingParams::make(2, 2), Error);
  EXPECT_THROW(RingParams::make(4, 3), Error);
}

TEST(BigradedRing, DimS) {
  BigradedRing ring(RingParams::make(2, 3));
  EXPECT_EQ(ring.dim_S(1, 1), 16);
  EXPECT_EQ(ring.dim_S(-1, 5), 0);
  EXPECT_EQ(ring.dim_S(1, 9), 880);
  EXPECT_EQ(static_cast<std::size_t>(ring.dim_S(1, 9)), count_monomials(4, 1) * count_monomials(4, 9));
}

TEST(BigradedRing, BasisSizes) {
  BigradedRing ring(RingParams::make(2, 3));
  EXPECT_EQ(ring.basis_R(0, 2).size(), count_monomials(4, 2));
  EXPECT_EQ(ring.basis_R(0, 2).size(), 10U);
  EXPECT_EQ(ring.basis_R(1, 1).size(), 15U);
  EXPECT_EQ(ring.basis_R(1, 9).size(), count_monomials(4, 1) * count_monomials(4, 9) - count_monomials(4, 8));
  EXPECT_EQ(ring.basis_R(1, 9).size(), 715U);
  EXPECT_TRUE(ring.basis_R(-1, 3).empty());
}

TEST(BigradedRing, BasisOrderIsDescendingAndFree) {
  BigradedRing ring(RingParams::make(3, 3));
  const auto& basis = ring.basis_R(2, 3);
  for (std::size_t i = 0; i + 1 < basis.size(); ++i) EXPECT_GT(basis[i], basis[i + 1]);
  for (const auto& m : basis) {
    EXPECT_FALSE(m.divisible_by_x0y0());
    EXPECT_EQ(m.bidegree(), std::make_pair(2, 3));
  }
}

TEST(BigradedRing, BasisCountMatchesHilbertFunction) {
  for (int n : {3, 4}) {
    BigradedRing ring(RingParams::make(3, n));
    for (int a = -2; a <= 6; ++a) {
      for (int b = -2; b <= 6; ++b) {
        EXPECT_EQ(static_cast<std::int64_t>(ring.basis_R(a, b).size()),
                  ring.dim_S(a, b) - ring.dim_S(a - 1, b - 1));
      }
    }
  }
}

TEST(BigradedRing, DegreeCap) {
  BigradedRing ring(RingParams::make(2, 3), 8);
  EXPECT_NO_THROW(ring.basis_R(8, 8));
  try {
    (void)ring.basis_R(9, 0);
    FAIL() << "expected InvalidParams";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
  }
}

TEST(NormalForm, RewritesLeadingTerm) {
  BigradedRing ring(RingParams::make(2, 3));
  BiMonomial x0y0 = ring.unit_monomial();
  x0y0.x[0] = 1;
  x0y0.y[0] = 1;
  const auto nf = ring.normal_form(BiPoly::monomial(2, x0y0));
  BiPoly expected(2, 4, {1, 1});
  for (std::size_t i = 1; i < 4; ++i) {
    BiMonomial m = ring.unit_monomial();
    m.x[i] = 1;
    m.y[i] = 1;
    expected.add_term(m, 1);
  }
  EXPECT_EQ(nf, expected);
  EXPECT_TRUE(ring.normal_form(ring.q()).is_zero());
  EXPECT_TRUE(ring.normal_form(ring.q().pow(2)).is_zero());
}

TEST(NormalForm, PowersOfRelationVanish) {
  for (std::uint32_t p : {2U, 3U, 5U}) {
    BigradedRing ring(RingParams{p, 3});
    EXPECT_TRUE(ring.normal_form(ring.q().pow(p)).is_zero()) << p;
    EXPECT_TRUE(naive_reduce(ring, ring.q().pow(p)).is_zero()) << p;
  }
}

TEST(NormalForm, AgreesWithStepwiseRewriting) {
  std::mt19937 rng(5);
  for (std::uint32_t p : {2U, 3U, 7U}) {
    BigradedRing ring(RingParams{p, 3});
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = random_poly(rng, ring, 4, 3, 5);
      EXPECT_EQ(ring.normal_form(f), naive_reduce(ring, f));
    }
  }
}

TEST(NormalForm, IdempotentAndLinear) {
  std::mt19937 rng(11);
  BigradedRing ring(RingParams{3, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly(rng, ring, 3, 4, 6);
    const auto g = random_poly(rng, ring, 3, 4, 6);
    const auto nf = ring.normal_form(f);
    EXPECT_EQ(ring.normal_form(nf), nf);
    EXPECT_EQ(ring.normal_form(f + g), ring.normal_form(nf + ring.normal_form(g)));
    for (const auto& [m, c] : nf.terms()) EXPECT_FALSE(m.divisible_by_x0y0());
  }
}

TEST(MultMatrix, Examples) {
  BigradedRing ring(RingParams::make(2, 3));
  EXPECT_EQ(ring.mult_matrix(ring.one(), 1, 2), FpMatrix::identity(2, ring.basis_R(1, 2).size()));

  const auto y0sq = ring.y_power(0, 2);
  const auto col = ring.mult_matrix(y0sq, 0, 0);
  ASSERT_EQ(col.rows(), 10U);
  ASSERT_EQ(col.cols(), 1U);
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(col(r, 0), r == 0 ? 1 : 0);

  const auto inj = ring.mult_matrix(y0sq, 0, 2);
  EXPECT_EQ(inj.rows(), 35U);
  EXPECT_EQ(rank(inj), 10U);
}

TEST(MultMatrix, RelationActsAsZero) {
  for (std::uint32_t p : {2U, 3U}) {
    BigradedRing ring(RingParams{p, 3});
    for (auto [a, b] : {std::pair{0, 0}, {1, 2}, {3, 1}, {2, 2}}) {
      EXPECT_TRUE(ring.mult_matrix(ring.q(), a, b).is_zero());
    }
  }
}

TEST(MultMatrix, Associativity) {
  std::mt19937 rng(21);
  BigradedRing ring(RingParams{3, 3});
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = BiPoly::monomial(3, random_monomial(rng, 4, 1, 1), 2);
    const auto h = random_poly(rng, ring, 1, 0, 3);
    const auto gh = ring.mult_matrix(g * h, 1, 2);
    const auto composed = ring.mult_matrix(g, 2, 2) * ring.mult_matrix(h, 1, 2);
    EXPECT_EQ(gh, composed);
  }
}

TEST(MultMatrix, SparseMatchesDense) {
  BigradedRing ring(RingParams{2, 3});
  const auto g = ring.y_power(1, 2) + ring.y_power(3, 2);
  EXPECT_EQ(ring.mult_matrix_sparse(g, 2, 3).to_dense(), ring.mult_matrix(g, 2, 3));
}

}  // namespace
}  // namespace frobcoh

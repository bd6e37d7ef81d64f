#include <gtest/gtest.h>

#include <sstream>

#include "frobcoh/error.hpp"
#include "frobcoh/projective_cohomology.hpp"

namespace frobcoh {
namespace {

// Closed-form Euler characteristic of O(a) on P^n as the polynomial (a+1)...(a+n)/n!.
std::int64_t chi_polynomial(int n, int a) {
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (int k = 1; k <= n; ++k) {
    num *= a + k;
    den *= k;
  }
  return num / den;
}

TEST(ProjectiveSpace, LineBundleCohomology) {
  EXPECT_EQ(h_pn(3, 2, 0), 10);
  EXPECT_EQ(h_pn(3, -4, 3), 1);
  for (int i = 0; i <= 3; ++i) EXPECT_EQ(h_pn(3, -2, i), 0);
  for (int n = 1; n <= 5; ++n) {
    for (int a = -10; a <= 10; ++a) {
      EXPECT_EQ(chi_pn(n, a), chi_polynomial(n, a)) << n << " " << a;
      EXPECT_EQ(static_cast<std::int64_t>(laurent_basis(n, a).size()), h_pn(n, a, n));
    }
  }
}

TEST(ProjectiveSpace, LaurentBasisOrderAndRange) {
  const auto basis = laurent_basis(3, -6);
  ASSERT_EQ(basis.size(), 10U);
  for (std::size_t i = 0; i + 1 < basis.size(); ++i) EXPECT_GT(basis[i], basis[i + 1]);
  for (const auto& e : basis) {
    int sum = 0;
    for (int v : e) {
      EXPECT_LE(v, -1);
      sum += v;
    }
    EXPECT_EQ(sum, -6);
  }
}

TEST(ProductSpace, Kuenneth) {
  EXPECT_EQ(h_W(3, {-4, 0}, 3), 1);
  EXPECT_EQ(h_W(3, {-5, 0}, 3), 4);
  EXPECT_EQ(h_W(3, {-4, -4}, 6), 1);
  CohomologyEngine engine(2, 3);
  const auto w = engine.basis_W({-4, 0}, 3);
  ASSERT_EQ(w->sectors.size(), 1U);
  EXPECT_EQ(w->sectors[0].i, 3);
  EXPECT_EQ(w->sectors[0].j, 0);
  for (int a = -7; a <= 3; ++a) {
    for (int b = -7; b <= 3; ++b) {
      for (int k = 0; k <= 6; ++k) {
        EXPECT_EQ(static_cast<std::int64_t>(engine.basis_W({a, b}, k)->dim()), h_W(3, {a, b}, k));
      }
    }
  }
}

TEST(TimesQ, Examples) {
  CohomologyEngine engine(2, 3);
  const auto h0 = engine.times_q_map({1, 1}, 0);
  EXPECT_EQ(h0.rows(), 16U);
  EXPECT_EQ(h0.cols(), 1U);
  EXPECT_EQ(rank(h0), 1U);

  // Source basis of H^3(O(-5)): a single -2 exponent at position i.  x_i y_i moves
  // it to (-1,-1,-1,-1) (x) y_i and every other term leaves the Laurent range.
  const auto m = engine.times_q_map({-4, 1}, 3);
  ASSERT_EQ(m.rows(), 4U);
  ASSERT_EQ(m.cols(), 4U);
  const auto src = engine.basis_W({-5, 0}, 3);
  const auto tgt = engine.basis_W({-4, 1}, 3);
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t where = 0;
    while (src->elements[c].x[where] != -2) ++where;
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_EQ(m(r, c), tgt->elements[r].y[where] == 1 ? 1 : 0);
    }
  }
  EXPECT_EQ(rank(m), 4U);

  const auto top = engine.times_q_map({-4, -4}, 6);
  EXPECT_EQ(top.rows(), 1U);
  EXPECT_EQ(rank(top), 1U);
}

TEST(TimesQ, SurjectiveInTopDegree) {
  CohomologyEngine engine(2, 3);
  for (int a = -8; a <= 0; ++a) {
    for (int b = -8; b <= 0; ++b) {
      EXPECT_EQ(static_cast<std::int64_t>(rank(engine.times_q_sparse({a, b}, 6))), h_W(3, {a, b}, 6));
    }
  }
}

TEST(HY, Examples) {
  CohomologyEngine engine(2, 3);
  EXPECT_EQ(engine.h_Y({1, 1}, 0), 15);
  EXPECT_EQ(engine.h_Y({0, -4}, 3), 1);
  EXPECT_EQ(engine.h_Y({0, -4}, 2), 0);
  EXPECT_EQ(engine.h_Y({-4, 0}, 3), 1);
  for (int a = -8; a <= 8; ++a) {
    for (int b = -8; b <= 8; ++b) EXPECT_EQ(engine.h_Y({a, b}, 1), 0);
  }
}

TEST(HY, RejectsSmallDimension) {
  try {
    CohomologyEngine engine(2, 1);
    FAIL() << "expected UnsupportedDimension";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
  }
}

TEST(HY, MiddleDegreeDoesNotVanishInGeneral) {
  // Only h^2 survives at (-3,5): O(-3) has no cohomology on P^3 and
  // h^3(W,(-4,4)) sits in degree 3 while the twist (-3,5) has none.  So the
  // Euler characteristic chi_W(-3,5) - chi_W(-4,4) = 0 + 35 pins h^2 = 35.
  CohomologyEngine engine(2, 3);
  EXPECT_EQ(chi_W(3, {-3, 5}) - chi_W(3, {-4, 4}), 35);
  EXPECT_EQ(engine.h_Y({-3, 5}, 2), 35);
  EXPECT_EQ(engine.h_Y({5, -3}, 2), 35);
}

class HYProperties : public ::testing::TestWithParam<std::pair<std::uint32_t, int>> {};

TEST_P(HYProperties, SerreDuality) {
  const auto [p, n] = GetParam();
  CohomologyEngine engine(p, n);
  for (int a = -6; a <= 3; ++a) {
    for (int b = -6; b <= 3; ++b) {
      for (int i = 0; i <= 2 * n - 1; ++i) {
        EXPECT_EQ(engine.h_Y({a, b}, i), engine.h_Y({-n - a, -n - b}, 2 * n - 1 - i))
            << a << "," << b << " i=" << i;
      }
    }
  }
}

TEST_P(HYProperties, EulerAdditivity) {
  const auto [p, n] = GetParam();
  CohomologyEngine engine(p, n);
  for (int a = -6; a <= 3; ++a) {
    for (int b = -6; b <= 3; ++b) {
      EXPECT_EQ(engine.chi_Y({a, b}), chi_W(n, {a, b}) - chi_W(n, {a - 1, b - 1}));
    }
  }
}

TEST_P(HYProperties, VanishingRanges) {
  const auto [p, n] = GetParam();
  CohomologyEngine engine(p, n);
  for (int a = -6; a <= 4; ++a) {
    for (int b = -6; b <= 4; ++b) {
      for (int i = 1; i < n - 1; ++i) EXPECT_EQ(engine.h_Y({a, b}, i), 0);
      if (a > -n && b > -n) {
        for (int i = 1; i <= 2 * n - 1; ++i) EXPECT_EQ(engine.h_Y({a, b}, i), 0);
      }
      if (std::min(a, b) < 0) {
        EXPECT_EQ(engine.h_Y({a, b}, 0), 0);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Params, HYProperties,
                         ::testing::Values(std::pair{2U, 3}, std::pair{3U, 3}, std::pair{3U, 4},
                                           std::pair{2U, 2}));

TEST(HY, ModelsMatchDimensions) {
  CohomologyEngine engine(2, 3);
  for (int a = -6; a <= 2; ++a) {
    for (int b = -6; b <= 2; ++b) {
      for (int i = 0; i <= 5; ++i) {
        EXPECT_EQ(static_cast<std::int64_t>(engine.model_Y({a, b}, i)->dim), engine.h_Y({a, b}, i));
      }
    }
  }
  const auto coker = engine.model_Y({-4, 0}, 3);
  EXPECT_EQ(coker->realization, Realization::Cokernel);
  const auto ker = engine.model_Y({-3, 5}, 2);
  EXPECT_EQ(ker->realization, Realization::Kernel);
}

TEST(InducedMap, IdentityAndInclusion) {
  CohomologyEngine engine(2, 3);
  const auto& ring = engine.ring();
  EXPECT_EQ(engine.induced_map_Y(ring.one(), 0, {1, 2}, {1, 2}),
            FpMatrix::identity(2, static_cast<std::size_t>(engine.h_Y({1, 2}, 0))));
  EXPECT_EQ(engine.induced_map_Y(ring.one(), 3, {-6, 0}, {-6, 0}),
            FpMatrix::identity(2, static_cast<std::size_t>(engine.h_Y({-6, 0}, 3))));
  EXPECT_EQ(engine.induced_map_Y(ring.one(), 2, {-3, 5}, {-3, 5}), FpMatrix::identity(2, 35));

  const auto incl = engine.induced_map_Y(ring.y_power(0, 2), 0, {0, 0}, {0, 2});
  ASSERT_EQ(incl.rows(), 10U);
  ASSERT_EQ(incl.cols(), 1U);
  EXPECT_EQ(incl(0, 0), 1);
  for (std::size_t r = 1; r < 10; ++r) EXPECT_EQ(incl(r, 0), 0);

  try {
    (void)engine.induced_map_Y(ring.y_power(0, 2), 0, {0, 0}, {0, 1});
    FAIL() << "expected DegreeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
}

TEST(InducedMap, Functoriality) {
  CohomologyEngine engine(3, 3);
  const auto& ring = engine.ring();
  const auto g = ring.x_power(1, 1) + ring.x_power(2, 1);
  const auto h = ring.y_power(0, 1) + ring.y_power(3, 1);
  struct Case {
    int i;
    Twist src;
  };
  for (const Case& c : {Case{0, {1, 1}}, Case{3, {-7, -1}}, Case{3, {-1, -7}}, Case{2, {-4, 5}},
                       Case{5, {-6, -6}}}) {
    const Twist mid{c.src.first, c.src.second + 1};
    const Twist end{c.src.first + 1, c.src.second + 1};
    const auto composed = engine.induced_map_Y(g, c.i, mid, end) * engine.induced_map_Y(h, c.i, c.src, mid);
    EXPECT_EQ(engine.induced_map_Y(g * h, c.i, c.src, end), composed) << c.i;
  }
}

TEST(InducedMap, FrobeniusEulerColumnRank) {
  // x_0^p on H^0: injective since R is a domain.
  CohomologyEngine engine(2, 3);
  const auto m = engine.induced_map_Y(engine.ring().x_power(0, 2), 0, {0, 1}, {2, 1});
  EXPECT_EQ(rank(m), static_cast<std::size_t>(engine.h_Y({0, 1}, 0)));
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  CohomologyEngine one(2, 3);
  CohomologyEngine many(2, 3);
  const auto a = one.sweep_Y({-4, 2}, {-3, 3}, 1);
  const auto b = many.sweep_Y({-4, 2}, {-3, 3}, 4);
  std::ostringstream sa;
  std::ostringstream sb;
  write_h_csv(sa, a);
  write_h_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.size(), 7U * 7U * 6U);
  EXPECT_EQ(sa.str().substr(0, 8), "a,b,i,h\n");
}

}  // namespace
}  // namespace frobcoh

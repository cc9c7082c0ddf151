#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qclat/criteria.hpp"
#include "qclat/error.hpp"
#include "qclat/extension.hpp"

using namespace qclat;

namespace {

RealSequenceWindow integers(std::int64_t lo, std::int64_t hi) {
  std::vector<double> v;
  for (auto n = lo; n <= hi; ++n) v.push_back(static_cast<double>(n));
  return build_sequence(v, lo);
}

std::vector<double> two_slope_values() {
  std::vector<double> v;
  for (int n = -8; n <= 8; ++n) v.push_back(n <= 0 ? n : 2.0 * n);
  return v;
}

PLMap two_slope() { return pl_map(build_sequence(two_slope_values(), -8)); }

std::vector<double> as_vector(const RealSequenceWindow& w) { return {w.values().begin(), w.values().end()}; }

}  // namespace

TEST(PLMap, Examples) {
  EXPECT_EQ(pl_map(integers(-4, 4)).eval(0.25), 0.25);
  const auto m = pl_map(build_sequence({0, 1, 3}, 0));
  EXPECT_EQ(m(1.5), 2.0);
  const auto t = two_slope();
  EXPECT_EQ(t(0.5), 1.0);
  EXPECT_EQ(t(0.75), 1.5);
  EXPECT_EQ(t(1.5), 3.0);
  EXPECT_EQ(t(-0.5), -0.5);
  // affine continuation outside the window
  EXPECT_EQ(t(10.0), 20.0);
  EXPECT_EQ(t(-10.0), -10.0);
  EXPECT_EQ(t.left_slope(), 1.0);
  EXPECT_EQ(t.right_slope(), 2.0);
}

TEST(PLMapProperty, ExactAtBreakpointsAndMonotone) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto seq = random_M_sequence(4.0, 40, seed);
    const auto m = pl_map(seq);
    for (auto n = seq.first_index(); n <= seq.last_index(); ++n) EXPECT_EQ(m(static_cast<double>(n)), seq[n]);
    double prev = -INFINITY;
    for (double x = -30; x <= 30; x += 0.0625) {
      const double y = m(x);
      EXPECT_GT(y, prev);
      EXPECT_NEAR(y, oracle::pl_eval(as_vector(seq), seq.first_index(), x), 1e-12 * (1 + std::abs(y)));
      prev = y;
    }
  }
}

TEST(PLMapProperty, IntegralMatchesGaussLegendre) {
  const auto seq = random_M_sequence(3.0, 30, 99);
  const auto m = pl_map(seq);
  const auto v = as_vector(seq);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-25, 25);
  for (int i = 0; i < 200; ++i) {
    const double a = u(gen), b = u(gen);
    const double ref = oracle::gauss_legendre([&](double s) { return oracle::pl_eval(v, seq.first_index(), s); }, a, b);
    EXPECT_NEAR(m.integral(a, b), ref, 1e-10 * (1 + std::abs(ref)));
  }
}

TEST(QSProfile, Identity) {
  const auto m = pl_map(integers(-10, 10));
  const std::vector<double> xs{-3.3, 0, 1.7}, ts{0.1, 1, 5};
  const auto p = qs_profile(m, xs, ts);
  EXPECT_EQ(p.samples.size(), 9u);
  EXPECT_DOUBLE_EQ(p.rho_hat, 1.0);
  EXPECT_EQ(p.violations, 0u);
}

TEST(QSProfile, AlternatingGaps) {
  std::vector<double> v{0};
  for (int i = 0; i < 20; ++i) v.push_back(v.back() + (i % 2 == 0 ? 1.0 : 2.0));
  const auto m = pl_map(build_sequence(v, 0));
  std::vector<double> xs;
  for (int n = 2; n <= 18; ++n) xs.push_back(n);
  const std::vector<double> ts{1.0};
  const auto p = qs_profile(m, xs, ts);
  EXPECT_EQ(p.rho_hat, 2.0);
  for (const auto& s : p.samples) EXPECT_TRUE(s.ratio == 0.5 || s.ratio == 2.0);
}

TEST(QSProfile, RejectsNonpositiveOffset) {
  const auto m = pl_map(integers(0, 5));
  const std::vector<double> xs{1}, ts{0.0};
  EXPECT_THROW(qs_profile(m, xs, ts), Error);
}

TEST(QSProfileProperty, SampledQuotientsWithinC) {
  std::mt19937_64 gen(2024);
  for (double mm : {1.5, 2.0, 5.0}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto seq = random_M_sequence(mm, 64, seed);
      std::uniform_real_distribution<double> ux(-28, 28);
      std::vector<double> xs(60), ts;
      for (auto& x : xs) x = ux(gen);
      for (double t = 1e-3; t < 30; t *= 1.7) ts.push_back(t);
      const auto p = qs_profile(pl_map(seq), xs, ts, mm);
      EXPECT_EQ(p.violations, 0u);
      EXPECT_LE(p.rho_hat, qs_constant_C(mm));
      EXPECT_GE(p.rho_hat, 1.0);
    }
  }
}

TEST(Extension, IdentityExtendsToIdentity) {
  const auto m = pl_map(integers(-10, 10));
  const Complex f = ba_extend(m, {1, 2});
  EXPECT_NEAR(f.real(), 1.0, 1e-13);
  EXPECT_NEAR(f.imag(), 2.0, 1e-13);
}

TEST(Extension, TwoSlopeClosedForms) {
  const auto m = two_slope();
  const Complex a = ba_extend(m, {0, 1});
  EXPECT_NEAR(a.real(), 0.25, 1e-12);
  EXPECT_NEAR(a.imag(), 1.5, 1e-12);
  const Complex b = ba_extend(m, {10, 1});
  EXPECT_NEAR(b.real(), 20.0, 1e-12);
  EXPECT_NEAR(b.imag(), 2.0, 1e-12);
}

TEST(Extension, RealAxisRejected) { EXPECT_THROW(ba_extend(two_slope(), {0.5, 0.0}), Error); }

TEST(ExtensionProperty, QuadratureRoutesAgreeWithOracle) {
  const auto seq = random_M_sequence(3.0, 40, 5);
  const auto m = pl_map(seq);
  const auto v = as_vector(seq);
  ExtensionOptions simpson;
  simpson.quadrature = Quadrature::AdaptiveSimpson;
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ux(-15, 15), uy(0.01, 8);
  for (int i = 0; i < 100; ++i) {
    const Complex z{ux(gen), uy(gen)};
    const Complex ref = oracle::ba_extend(v, seq.first_index(), z);
    const Complex exact = ba_extend(m, z);
    const Complex simp = ba_extend(m, z, simpson);
    EXPECT_NEAR(std::abs(exact - ref), 0.0, 1e-10 * (1 + std::abs(ref)));
    EXPECT_NEAR(std::abs(simp - ref), 0.0, 1e-7 * (1 + std::abs(ref)));
  }
}

TEST(ExtensionProperty, ConjugateSymmetry) {
  const auto m = pl_map(random_M_sequence(2.0, 30, 1));
  for (double x = -5; x <= 5; x += 1.3) {
    for (double y = 0.2; y < 6; y += 1.1) {
      EXPECT_EQ(ba_extend(m, {x, -y}), std::conj(ba_extend(m, {x, y})));
    }
  }
}

TEST(ExtensionProperty, BoundaryAgreement) {
  const auto m = pl_map(random_M_sequence(2.0, 30, 4));
  for (double x = -10; x <= 10; x += 0.7) {
    const double e3 = std::abs(ba_extend(m, {x, 1e-3}) - Complex{m(x), 0});
    const double e4 = std::abs(ba_extend(m, {x, 1e-4}) - Complex{m(x), 0});
    EXPECT_LT(e3, 1e-2);
    EXPECT_LT(e4, 1e-3);
    EXPECT_LE(e4, e3 + 1e-12);
  }
}

TEST(ExtensionProperty, AffineEquivariance) {
  const auto seq = random_M_sequence(3.0, 40, 12);
  const double c = 2.5, d = -7.0;
  std::vector<double> w;
  for (double a : seq.values()) w.push_back(c * a + d);
  const auto m1 = pl_map(seq);
  const auto m2 = pl_map(build_sequence(w, seq.first_index()));
  Grid g{-6, 6, 0.5, 6.5, 13, 13};
  const auto f1 = extension_field(m1, g);
  const auto f2 = extension_field(m2, g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    EXPECT_NEAR(std::abs(f2.values[p] - (c * f1.values[p] + d)), 0.0, 1e-9 * (1 + std::abs(f2.values[p])));
  }
  const auto k1 = dilatation_field(m1, g);
  const auto k2 = dilatation_field(m2, g);
  for (std::size_t p = 0; p < g.size(); ++p) EXPECT_NEAR(std::abs(k1.mu[p] - k2.mu[p]), 0.0, 1e-6);
}

TEST(ExtensionField, BoundaryRowAndUpperHalfPlane) {
  const auto m = pl_map(random_M_sequence(2.0, 30, 6));
  const Grid g{-8, 8, 0, 8, 33, 17};
  const auto f = extension_field(m, g);
  EXPECT_EQ(f.vertical_scale, 2.0);
  for (std::size_t i = 0; i < g.nx; ++i) EXPECT_EQ(f.at(i, 0), Complex(m(g.x(i)), 0.0));
  for (std::size_t j = 1; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) EXPECT_GT(f.at(i, j).imag(), 0.0);
}

TEST(Dilatation, IdentityIsConformal) {
  const auto d = dilatation_field(pl_map(integers(-20, 20)), Grid{-5, 5, 0.5, 5.5, 21, 21});
  EXPECT_LT(d.max_k() - 1.0, 1e-6);
  for (const auto& mu : d.mu) EXPECT_LT(std::abs(mu), 1e-6);
}

TEST(Dilatation, TwoSlope) {
  const auto m = two_slope();
  const auto deep = dilatation_field(m, Grid{9.5, 10.5, 0.5, 1.5, 3, 3});
  EXPECT_LT(std::abs(deep.max_k() - 1.0), 1e-4);
  const auto iface = dilatation_field(m, Grid{0, 1, 1, 2, 2, 2});
  EXPECT_GT(iface.k[0], 1.0 + 1e-3);
  EXPECT_TRUE(std::isfinite(iface.k[0]));
}

TEST(Dilatation, GridValidation) {
  const auto m = two_slope();
  EXPECT_THROW(dilatation_field(m, Grid{0, 1, 0, 1, 3, 3}), Error);      // touches the real axis
  EXPECT_THROW(dilatation_field(m, Grid{0, 1, 1, 2, 3, 3}, 0.4), Error);  // step too large
  EXPECT_THROW(extension_field(m, Grid{1, 0, 1, 2, 3, 3}), Error);
}

TEST(DilatationProperty, FloorAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = pl_map(random_M_sequence(3.0, 30, seed));
    const Grid g{-10, 10, 0.25, 6.25, 21, 13};
    ExtensionOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const auto a = dilatation_field(m, g, std::nullopt, one);
    const auto b = dilatation_field(m, g, std::nullopt, many);
    EXPECT_GE(a.min_k(), 1.0 - 1e-6);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.mu, b.mu);
  }
}

TEST(RandomSequence, Generator) {
  EXPECT_EQ(ratio_report(random_M_sequence(1.0, 20, 3)).m_hat, 1.0);
  const auto s = random_M_sequence(2.0, 64, 7);
  EXPECT_EQ(s.size(), 64u);
  EXPECT_LE(ratio_report(s).m_hat, 2.0);
  EXPECT_LE(static_cast<double>(oracle::ratio_m_hat(as_vector(s))), 2.0);
  EXPECT_EQ(s, random_M_sequence(2.0, 64, 7));
  EXPECT_NE(s, random_M_sequence(2.0, 64, 8));
  EXPECT_THROW(random_M_sequence(0.5, 10, 1), Error);
  EXPECT_THROW(random_M_sequence(2.0, 2, 1), Error);
  const auto p = qs_profile(pl_map(random_M_sequence(5.0, 64, 2)), std::vector<double>{-10, 0, 3.5, 17},
                            std::vector<double>{0.01, 0.5, 2, 9});
  EXPECT_LE(p.rho_hat, 780.0);
}

// Acceptance suite: one line per criterion, exit status 0 only if every
// selected criterion passes. Usage: qclat_acceptance [criterion-number ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qclat/criteria.hpp"
#include "qclat/extension.hpp"
#include "qclat/geometry.hpp"
#include "qclat/io.hpp"
#include "qclat/modulus.hpp"

using namespace qclat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

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

void ratio_exactness(Outcome& o) {
  for (auto [lo, hi] : {std::pair{-8, 8}, std::pair{0, 3}, std::pair{-100, 100}}) {
    const double m = ratio_report(integers(lo, hi)).m_hat;
    o.require(m == 1.0, "integer window m_hat != 1");
  }
  const auto ts = two_slope_values();
  const auto two = ratio_report(build_sequence(ts, -8));
  const auto two_oracle = static_cast<double>(oracle::ratio_m_hat(ts));
  o.require(two.m_hat == 2.0 && two_oracle == 2.0, "two-slope m_hat != 2");
  o.detail << "two-slope m_hat=" << two.m_hat << " (oracle " << two_oracle << "); ";

  const int tail = 8;  // exponents 0..J on each side
  const std::vector<double> s{2.0};
  const auto pm = corpus_generate("pm_geometric", s, {0, tail});
  std::vector<double> v;
  for (auto z : pm.points()) v.push_back(z.real());
  const auto r = ratio_report(build_sequence(v, 0));
  const auto ref = static_cast<double>(oracle::ratio_m_hat(v));
  o.require(r.m_hat == ref, "pm_geometric m_hat disagrees with oracle");
  const double claimed = std::ldexp(1.0, tail - 1);
  o.require(r.m_hat >= claimed, "pm_geometric m_hat below 2^(J-1)");
  o.detail << "pm_geometric(2) J=" << tail << " m_hat=" << r.m_hat << " (oracle " << ref << ", required >= "
           << claimed << ", witness n=" << r.witness.n << " k=" << r.witness.k << ")";
}

void qs_bound(Outcome& o) {
  std::size_t samples = 0, violations = 0;
  double worst = 0.0;
  std::mt19937_64 gen(20240601);
  for (double m : {1.5, 2.0, 5.0}) {
    const double c = oracle::qs_constant(m);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto seq = random_M_sequence(m, 64, seed);
      std::uniform_real_distribution<double> ux(-30.0, 29.0);
      std::vector<double> xs(100), ts;
      for (auto& x : xs) x = ux(gen);
      for (double t = 1e-3; t < 40.0; t *= 1.6) ts.push_back(t);
      const auto p = qs_profile(pl_map(seq), xs, ts, m);
      for (const auto& smp : p.samples) {
        ++samples;
        if (!(smp.ratio >= 1.0 / c && smp.ratio <= c)) ++violations;
        worst = std::max({worst, smp.ratio / c, 1.0 / (smp.ratio * c)});
      }
      o.require(p.bound_claimed == c, "bound_claimed != C(M)");
    }
  }
  o.require(violations == 0, "sampled quotient outside [1/C(M), C(M)]");
  o.detail << samples << " quotients over 300 sequences, " << violations
           << " violations, max |quotient|/C(M) = " << worst;
}

void identity_extension(Outcome& o) {
  const auto map = pl_map(integers(-64, 64));
  const Grid g{-8, 8, 0, 16, 64, 64};
  const auto f = extension_field(map, g);
  double dev = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) dev = std::max(dev, std::abs(f.at(i, j) - g.node(i, j)));
  o.require(dev < 1e-9, "nodal deviation >= 1e-9");
  const Grid gk{-8, 8, 0.25, 16.25, 64, 64};
  const auto d = dilatation_field(map, gk);
  const double kdev = std::max(std::abs(d.max_k() - 1.0), std::abs(d.min_k() - 1.0));
  o.require(kdev <= 1e-6, "K deviates from 1 by more than 1e-6");
  o.detail << "max |F(z)-z| = " << dev << ", max |K-1| = " << kdev;
}

void two_slope_forms(Outcome& o) {
  const auto ts = two_slope_values();
  const auto map = pl_map(build_sequence(ts, -8));
  // closed form: alpha = int_0^1 2t dt = 1, beta = int_0^1 -t dt = -1/2
  const Complex closed{(1.0 - 0.5) / 2.0, 1.0 + 0.5};
  const Complex f = ba_extend(map, {0, 1});
  const Complex gl = oracle::ba_extend(ts, -8, {0, 1});
  o.require(std::abs(f - closed) < 1e-8, "ba_extend(i) off the closed form");
  o.require(std::abs(gl - closed) < 1e-12, "quadrature oracle disagrees with closed form");
  const Grid g{-12, 12, 0.5, 4, 49, 15};
  const auto d = dilatation_field(map, g);
  double kdev = 0.0;
  std::size_t deep = 0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      if (x - y > 0.01 || x + y < -0.01) {
        ++deep;
        kdev = std::max(kdev, std::abs(d.k[g.index(i, j)] - 1.0));
      }
    }
  }
  o.require(deep > 100, "too few deep-slope nodes");
  o.require(kdev <= 1e-4, "deep-slope K deviates from 1 by more than 1e-4");
  o.detail << "F(i) = " << f.real() << "+" << f.imag() << "i (|err| " << std::abs(f - closed) << "), " << deep
           << " deep nodes, max |K-1| = " << kdev;
}

void porosity(Outcome& o) {
  const auto z = corpus_generate("integers", {}, {-8, 8});
  std::vector<Disk> zd;
  for (Complex c : {Complex(0, 0), Complex(0.5, 0), Complex(3.25, 0.5), Complex(-7.7, -2)})
    for (double r : {1.0, 3.0, 10.0, 30.0, 100.0}) zd.push_back({c, r});
  const auto zr = porosity_estimate(z, zd, 512);
  o.require(zr.c_hat <= 1.0 + 1e-2, "integers: required c above 1.01");

  const auto g = corpus_generate("gauss", {}, {-40, 40});
  const Disk gd{{0.5, 0.5}, 10};
  const auto gr = porosity_estimate(g, std::vector<Disk>{gd}, 512);
  const double hole = oracle::nearest_distance(g.points(), gd.center);  // sqrt(2)/2 by exhaustive search
  const double expected = gd.radius / hole;
  o.require(std::abs(hole - std::sqrt(0.5)) < 1e-15, "lattice hole oracle");
  o.require(std::abs(gr.c_hat - expected) <= 0.02 * expected, "Z+iZ required c not within 2% of 14.14");

  const std::vector<double> top{10};
  const auto e1 = corpus_generate("e1", top, {-300, 300});
  std::vector<Disk> ed;
  for (double x : {0.0, 0.5, 13.3})
    for (double y : {-5.0, 0.0, 0.5, 1.0, 1.5, 3.0, 6.0, 48.0, 100.0, 300.0})
      for (double r : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0, 100.0}) ed.push_back({{x, y}, r});
  const auto er = porosity_estimate(e1, ed, 128, 8.0);
  o.require(er.pass == std::optional<bool>(true), "E1 c_hat above 8");
  o.detail << "Z c_hat=" << zr.c_hat << ", Z+iZ c=" << gr.c_hat << " (analytic " << expected << "), E1 c_hat="
           << er.c_hat << " over " << ed.size() << " disks";
}

void turning(Outcome& o) {
  std::mt19937_64 gen(77);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> v;
    double x = -50;
    const std::size_t n = trial == 19 ? 500 : 3 + gen() % 200;  // last one exercises sampling
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(x += 0.01 + static_cast<double>(gen() % 1000) / 100.0, 0);
    worst = std::max(worst, turning_constant(build_polyline(v)).a_hat);
  }
  o.require(worst < 1.0, "monotone real polyline with a_hat >= 1");
  const auto far = turning_constant(build_polyline({{0, 0}, {10, 0}, {1, 0}}));
  o.require(far.a_hat >= 10.0, "far-and-back a_hat < 10");
  o.detail << "monotone max a_hat=" << worst << ", far-and-back a_hat=" << far.a_hat;
}

void modulus(Outcome& o) {
  const double target = 2 * std::numbers::pi;
  double err[2];
  int idx = 0;
  for (double h : {1.0 / 64, 1.0 / 128}) {
    const auto g = make_condenser_grid(-8, 8, -8, 8, h);
    SolverOptions so;
    so.keep_fields = false;
    const auto est = grid_condenser_modulus(
        build_condenser(g, mask_disk(g, {0, 0}, 1.0), mask_outside_disk(g, {0, 0}, std::numbers::e)), so);
    err[idx++] = std::abs(est.value - target) / target;
    o.detail << "annulus h=1/" << std::lround(1 / h) << " value=" << est.value << " rel.err=" << err[idx - 1] << "; ";
  }
  o.require(err[0] <= 0.05, "annulus at h=1/64 not within 5%");
  o.require(err[1] <= 0.025, "annulus at h=1/128 not within 2.5%");
  o.require(err[1] < err[0], "error did not decrease when h was halved");

  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(-1, 1);
  const double h = 1.0 / 16;
  int tested = 0, violations = 0;
  double min_ratio = INFINITY;
  while (tested < 20) {
    const Complex a{u(gen), u(gen)}, b{u(gen), u(gen)}, c{u(gen), u(gen)}, d{u(gen), u(gen)};
    if (oracle::segment_distance_sampled(a, b, c, d, 100) < 0.3 || std::abs(a - b) < 0.2 || std::abs(c - d) < 0.2) {
      continue;
    }
    const double diam = oracle::diameter({a, b, c, d});
    const double margin = 4 * diam;
    const double x0 = std::min({a.real(), b.real(), c.real(), d.real()}) - margin;
    const double x1 = std::max({a.real(), b.real(), c.real(), d.real()}) + margin;
    const double y0 = std::min({a.imag(), b.imag(), c.imag(), d.imag()}) - margin;
    const double y1 = std::max({a.imag(), b.imag(), c.imag(), d.imag()}) + margin;
    const auto g = make_condenser_grid(x0, x1, y0, y1, h);
    const auto m1 = mask_segment(g, a, b), m2 = mask_segment(g, c, d);
    SolverOptions so;
    so.keep_fields = false;
    const auto est = grid_condenser_modulus(build_condenser(g, m1, m2), so);
    const auto p1 = mask_points(g, m1), p2 = mask_points(g, m2);
    const auto bound = vuorinen_lower_points(p1, p2);
    // discretization tolerance: one grid step in the distance or diameter
    const double tol = (2 / std::numbers::pi) * (std::log1p((bound.min_diam + h) / std::max(bound.dist - h, h)) -
                                                 std::log1p(bound.min_diam / bound.dist));
    if (est.value < bound.value - tol) ++violations;
    min_ratio = std::min(min_ratio, est.value / bound.value);
    ++tested;
  }
  o.require(violations == 0, "grid value below the Vuorinen bound");
  o.detail << tested << " segment pairs, " << violations << " violations, min grid/bound = " << min_ratio;
}

void constants(Outcome& o) {
  o.require(qs_constant_C(1) == 4.0 && qs_constant_C(2) == 30.0, "C(1), C(2)");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double k = k_lower_bound_from_gap(std::exp(pi2 / std::log(2.0)));
  o.require(std::abs(k - 1.0) <= 1e-12, "k_lower_bound_from_gap(exp(pi^2/log 2)) != 1");
  int nonmono = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double kk = 1.0 + 0.1 * i, aa = 1.0 + 0.1 * j;
      const double here = ratio_bound_from_K_A(kk, aa);
      if (!std::isfinite(here)) ++nonmono;
      if (i + 1 < 10 && !(ratio_bound_from_K_A(kk + 0.1, aa) > here)) ++nonmono;
      if (j + 1 < 10 && !(ratio_bound_from_K_A(kk, aa + 0.1) > here)) ++nonmono;
    }
  }
  o.require(nonmono == 0, "ratio bound not strictly increasing on the 10x10 grid");
  o.detail << "C(1)=" << qs_constant_C(1) << " C(2)=" << qs_constant_C(2) << " K(gap)-1=" << k - 1.0
           << ", monotonicity failures " << nonmono;
}

void periodic(Outcome& o) {
  for (std::size_t m = 1; m <= 5; ++m) {
    AdditivePeriodic d;
    for (std::size_t i = 0; i < m; ++i) d.reps.emplace_back(0.17 * static_cast<double>(i), std::pow(1.5, i) - 1.0);
    d.count = CosetCount::finite(m);
    const auto v = periodic_additive_check(Descriptor{d});
    o.require(v.kind == VerdictKind::ExactYes && v.is_exact(), "finite additive not ExactYes");
  }
  const auto e1 = decide_equiv_to_Z(corpus_generate("e1", {}, {-8, 8}));
  o.require(e1.kind == VerdictKind::ExactNo, "E1 not ExactNo");
  const auto mp = periodic_multiplicative_check(
      Descriptor{MultiplicativePeriodic{3.0, {{1, 0}, {1, 1}}, CosetCount::finite(2)}});
  o.require(mp.kind == VerdictKind::ExactYes && mp.target == "R'", "finite multiplicative not ExactYes vs R'");
  for (double r : {1.5, 2.0, 10.0}) {
    const std::vector<double> p{r};
    const auto g = decide_equiv_to_Z(corpus_generate("geometric", p, {0, 20}));
    o.require(g.kind == VerdictKind::ExactNo && g.theorem == "Thm lem", "geometric corpus not ExactNo/Thm lem");
  }
  o.detail << "E1 -> " << to_string(e1.kind) << " (" << e1.theorem << "), multiplicative -> " << to_string(mp.kind)
           << " vs " << mp.target;
}

void spacing(Outcome& o) {
  const auto w = integers(-20, 20);
  const auto id = validate_image_spacing(w, w.values(), 1.0);
  o.require(id.ok() && id.l_bound == 8.0, "identity images flagged");
  std::vector<double> img;
  for (auto n = w.first_index(); n <= w.last_index(); ++n) img.push_back(n <= 0 ? n : n + 4.0);
  const auto r = validate_image_spacing(w, img, 1.0);
  const bool flagged = std::any_of(r.violations.begin(), r.violations.end(), [](const SpacingViolation& v) {
    return v.family == SpacingFamily::ConsecutiveGap && v.quantity == 5.0 && v.bound == 2.0;
  });
  o.require(flagged, "planted gap of 5 not flagged against 2A");
  o.detail << "identity violations " << id.violation_count << ", planted-gap violations " << r.violation_count;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "ratio-test-exactness", 1.0, ratio_exactness},
      {2, "quasisymmetry-bound", 30.0, qs_bound},
      {3, "extension-normalization", 0.0, identity_extension},
      {4, "two-slope-closed-forms", 0.0, two_slope_forms},
      {5, "porosity", 0.0, porosity},
      {6, "turning", 0.0, turning},
      {7, "modulus", 120.0, modulus},
      {8, "constants", 0.0, constants},
      {9, "periodic-checkers", 1.0, periodic},
      {10, "spacing-validator", 0.0, spacing},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0) o.require(secs < c.time_limit_s, "runtime limit exceeded");
    std::printf("[%s] criterion %d %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

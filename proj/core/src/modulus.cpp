#include "qclat/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <string>

#include "qclat/error.hpp"
#include "qclat/geometry.hpp"

namespace qclat {

double annulus_modulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out)) {
    throw Error(Errc::BadRadii, "need 0 < r_in < r_out, got r_in = " + std::to_string(r_in) +
                                    ", r_out = " + std::to_string(r_out));
  }
  return 2.0 * std::numbers::pi / std::log(r_out / r_in);
}

// ---------------------------------------------------------------------------
// Vuorinen bound
// ---------------------------------------------------------------------------

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

double point_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool on_segment(Complex p, Complex a, Complex b) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const double d1 = cross(d - c, a - c);
  const double d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a);
  const double d4 = cross(b - a, d - a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

double segment_segment(Complex a, Complex b, Complex c, Complex d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b), point_segment(d, a, b)});
}

double pairwise_diameter(std::span<const Complex> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, std::abs(pts[i] - pts[j]));
  }
  return best;
}

std::vector<Complex> convex_hull(std::span<const Complex> input) {
  std::vector<Complex> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (Complex p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

VuorinenBound finish_bound(double diam1, double diam2, double dist) {
  if (!(dist > 0.0)) throw Error(Errc::TouchingContinua, "continua intersect; the joining family is degenerate");
  VuorinenBound b;
  b.min_diam = std::min(diam1, diam2);
  b.dist = dist;
  b.value = (2.0 / std::numbers::pi) * std::log1p(b.min_diam / dist);
  return b;
}

void require_nonempty(std::span<const Complex> c1, std::span<const Complex> c2) {
  if (c1.empty() || c2.empty()) throw Error(Errc::BadParam, "each continuum needs at least one point");
}

}  // namespace

VuorinenBound vuorinen_lower(std::span<const Complex> c1, std::span<const Complex> c2) {
  require_nonempty(c1, c2);
  auto segment = [](std::span<const Complex> c, std::size_t s) {
    return c.size() == 1 ? std::pair{c[0], c[0]} : std::pair{c[s], c[s + 1]};
  };
  const std::size_t s1 = std::max<std::size_t>(1, c1.size() - 1);
  const std::size_t s2 = std::max<std::size_t>(1, c2.size() - 1);
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s1; ++i) {
    const auto [a, b] = segment(c1, i);
    for (std::size_t j = 0; j < s2; ++j) {
      const auto [c, d] = segment(c2, j);
      dist = std::min(dist, segment_segment(a, b, c, d));
    }
  }
  return finish_bound(pairwise_diameter(c1), pairwise_diameter(c2), dist);
}

VuorinenBound vuorinen_lower_points(std::span<const Complex> c1, std::span<const Complex> c2) {
  require_nonempty(c1, c2);
  const bool first_larger = c1.size() >= c2.size();
  const PointIndex index(std::vector<Complex>(first_larger ? c1.begin() : c2.begin(),
                                              first_larger ? c1.end() : c2.end()));
  double dist = std::numeric_limits<double>::infinity();
  for (Complex p : first_larger ? c2 : c1) dist = std::min(dist, index.nearest_distance(p));
  return finish_bound(pairwise_diameter(convex_hull(c1)), pairwise_diameter(convex_hull(c2)), dist);
}

// ---------------------------------------------------------------------------
// Grids and masks
// ---------------------------------------------------------------------------

CondenserGrid make_condenser_grid(double x0, double x1, double y0, double y1, double h) {
  if (!(h > 0.0) || !std::isfinite(h) || !(x1 > x0) || !(y1 > y0) || !std::isfinite(x1 - x0) ||
      !std::isfinite(y1 - y0)) {
    throw Error(Errc::InvalidCondenser, "condenser box needs x0 < x1, y0 < y1 and h > 0");
  }
  CondenserGrid g;
  g.x0 = x0;
  g.y0 = y0;
  g.h = h;
  g.nx = static_cast<std::size_t>(std::llround((x1 - x0) / h)) + 1;
  g.ny = static_cast<std::size_t>(std::llround((y1 - y0) / h)) + 1;
  if (g.nx < 3 || g.ny < 3) throw Error(Errc::InvalidCondenser, "condenser grid needs at least 3 nodes per axis");
  if (g.size() > 50'000'000) throw Error(Errc::InvalidCondenser, "condenser grid too large");
  return g;
}

NodeMask mask_disk(const CondenserGrid& grid, Complex center, double radius) {
  NodeMask m(grid.size(), 0);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) m[grid.index(i, j)] = std::abs(grid.node(i, j) - center) <= radius;
  }
  return m;
}

NodeMask mask_outside_disk(const CondenserGrid& grid, Complex center, double radius) {
  NodeMask m(grid.size(), 0);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) m[grid.index(i, j)] = std::abs(grid.node(i, j) - center) >= radius;
  }
  return m;
}

NodeMask mask_segment(const CondenserGrid& grid, Complex a, Complex b) {
  NodeMask m(grid.size(), 0);
  auto node_of = [&](Complex z) {
    const auto i = std::llround((z.real() - grid.x0) / grid.h);
    const auto j = std::llround((z.imag() - grid.y0) / grid.h);
    if (i < 0 || j < 0 || i >= static_cast<long long>(grid.nx) || j >= static_cast<long long>(grid.ny)) {
      throw Error(Errc::InvalidCondenser, "segment leaves the condenser box");
    }
    return std::pair{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
  };
  const double len = std::abs(b - a);
  const auto steps = static_cast<std::size_t>(std::ceil(4.0 * len / grid.h)) + 1;
  auto prev = node_of(a);
  m[grid.index(prev.first, prev.second)] = 1;
  for (std::size_t s = 1; s <= steps; ++s) {
    const auto cur = node_of(a + (b - a) * (static_cast<double>(s) / static_cast<double>(steps)));
    if (cur.first != prev.first && cur.second != prev.second) {
      m[grid.index(cur.first, prev.second)] = 1;  // close the diagonal step
    }
    m[grid.index(cur.first, cur.second)] = 1;
    prev = cur;
  }
  return m;
}

NodeMask mask_nodes(const CondenserGrid& grid, std::span<const std::pair<std::size_t, std::size_t>> nodes) {
  NodeMask m(grid.size(), 0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto [i, j] = nodes[k];
    if (i >= grid.nx || j >= grid.ny) {
      throw Error(Errc::InvalidCondenser, "mask node outside the grid", static_cast<std::int64_t>(k));
    }
    m[grid.index(i, j)] = 1;
  }
  return m;
}

std::vector<Complex> mask_points(const CondenserGrid& grid, const NodeMask& mask) {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      if (mask[grid.index(i, j)]) out.push_back(grid.node(i, j));
    }
  }
  return out;
}

namespace {

bool four_connected(const CondenserGrid& g, const NodeMask& mask) {
  const auto start = std::find(mask.begin(), mask.end(), std::uint8_t{1});
  if (start == mask.end()) return false;
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::deque<std::size_t> queue{static_cast<std::size_t>(start - mask.begin())};
  seen[queue.front()] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    ++reached;
    const std::size_t i = p % g.nx, j = p / g.nx;
    auto push = [&](std::size_t q) {
      if (mask[q] && !seen[q]) {
        seen[q] = 1;
        queue.push_back(q);
      }
    };
    if (i > 0) push(p - 1);
    if (i + 1 < g.nx) push(p + 1);
    if (j > 0) push(p - g.nx);
    if (j + 1 < g.ny) push(p + g.nx);
  }
  return reached == static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

}  // namespace

CondenserSpec build_condenser(CondenserGrid grid, NodeMask c1, NodeMask c2) {
  if (c1.size() != grid.size() || c2.size() != grid.size()) {
    throw Error(Errc::InvalidCondenser, "mask size does not match the grid");
  }
  for (auto* m : {&c1, &c2}) {
    for (auto& v : *m) v = v ? 1 : 0;
  }
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      if (!c1[grid.index(i, j)]) continue;
      for (std::size_t jj = j > 0 ? j - 1 : 0; jj <= std::min(j + 1, grid.ny - 1); ++jj) {
        for (std::size_t ii = i > 0 ? i - 1 : 0; ii <= std::min(i + 1, grid.nx - 1); ++ii) {
          if (c2[grid.index(ii, jj)]) {
            throw Error(Errc::MasksTooClose, "continua must be separated by at least 2 grid cells",
                        static_cast<std::int64_t>(grid.index(i, j)));
          }
        }
      }
    }
  }
  if (!four_connected(grid, c1)) throw Error(Errc::InvalidCondenser, "C1 is empty or not 4-connected");
  if (!four_connected(grid, c2)) throw Error(Errc::InvalidCondenser, "C2 is empty or not 4-connected");
  return CondenserSpec(grid, std::move(c1), std::move(c2));
}

std::string_view to_string(ModulusMethod method) noexcept {
  switch (method) {
    case ModulusMethod::AnalyticAnnulus: return "analytic_annulus";
    case ModulusMethod::VuorinenLower: return "vuorinen_lower";
    case ModulusMethod::GridCapacity: return "grid_capacity";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Condenser solve
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kFixed = -1;

// Edge weights of the five-point stencil with natural boundary conditions:
// edges running along the box boundary carry half weight.
double horizontal_weight(const CondenserGrid& g, std::size_t j) { return (j == 0 || j + 1 == g.ny) ? 0.5 : 1.0; }
double vertical_weight(const CondenserGrid& g, std::size_t i) { return (i == 0 || i + 1 == g.nx) ? 0.5 : 1.0; }

std::optional<double> margin_ratio(const CondenserSpec& spec) {
  const auto& g = spec.grid();
  std::size_t imin = g.nx, imax = 0, jmin = g.ny, jmax = 0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t p = g.index(i, j);
      if (!spec.c1()[p] && !spec.c2()[p]) continue;
      imin = std::min(imin, i);
      imax = std::max(imax, i);
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
    }
  }
  if (imin == 0 || jmin == 0 || imax + 1 == g.nx || jmax + 1 == g.ny) return std::nullopt;
  const double extent = static_cast<double>(std::max(imax - imin, jmax - jmin));
  if (extent == 0.0) return std::nullopt;
  const double gap = static_cast<double>(std::min({imin, jmin, g.nx - 1 - imax, g.ny - 1 - jmax}));
  return gap / extent;
}

}  // namespace

ModulusEstimate grid_condenser_modulus(const CondenserSpec& spec, const SolverOptions& options) {
  const CondenserGrid& g = spec.grid();
  const std::size_t n = g.size();

  std::vector<double> u(n, 0.0);
  std::vector<std::int64_t> unknown(n, kFixed);
  std::vector<std::size_t> free_nodes;
  for (std::size_t p = 0; p < n; ++p) {
    if (spec.c2()[p]) {
      u[p] = 1.0;
    } else if (!spec.c1()[p]) {
      unknown[p] = static_cast<std::int64_t>(free_nodes.size());
      free_nodes.push_back(p);
    }
  }
  const std::size_t nf = free_nodes.size();

  // Per unknown: up to four (neighbour unknown, weight) couplings, the
  // diagonal, and the right-hand side gathered from fixed neighbours.
  std::vector<std::int64_t> nbr(4 * nf, kFixed);
  std::vector<double> wt(4 * nf, 0.0);
  std::vector<double> diag(nf, 0.0), rhs(nf, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t p = free_nodes[f];
    const std::size_t i = p % g.nx, j = p / g.nx;
    std::size_t slot = 0;
    auto couple = [&](std::size_t q, double w) {
      diag[f] += w;
      if (unknown[q] == kFixed) {
        rhs[f] += w * u[q];
      } else {
        nbr[4 * f + slot] = unknown[q];
        wt[4 * f + slot] = w;
        ++slot;
      }
    };
    if (i > 0) couple(p - 1, horizontal_weight(g, j));
    if (i + 1 < g.nx) couple(p + 1, horizontal_weight(g, j));
    if (j > 0) couple(p - g.nx, vertical_weight(g, i));
    if (j + 1 < g.ny) couple(p + g.nx, vertical_weight(g, i));
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t f = 0; f < nf; ++f) {
      double s = diag[f] * x[f];
      for (std::size_t c = 0; c < 4; ++c) {
        const auto q = nbr[4 * f + c];
        if (q != kFixed) s -= wt[4 * f + c] * x[static_cast<std::size_t>(q)];
      }
      y[f] = s;
    }
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };

  ModulusEstimate est;
  est.method = ModulusMethod::GridCapacity;
  est.unknowns = nf;

  if (nf > 0) {
    const std::size_t max_iter =
        options.max_iterations != 0 ? options.max_iterations : std::max<std::size_t>(2000, 40 * (g.nx + g.ny));
    std::vector<double> x(nf, 0.0), r = rhs, z(nf), p(nf), q(nf);
    const double bnorm = std::sqrt(dot(rhs, rhs));
    if (bnorm == 0.0) throw Error(Errc::SolverDivergence, "right-hand side vanishes");
    for (std::size_t f = 0; f < nf; ++f) z[f] = r[f] / diag[f];
    p = z;
    double rz = dot(r, z);
    double rel = 1.0;
    std::size_t it = 0;
    while (it < max_iter) {
      apply(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) throw Error(Errc::SolverDivergence, "conjugate gradient breakdown (p.Ap <= 0)");
      const double alpha = rz / pq;
      for (std::size_t f = 0; f < nf; ++f) {
        x[f] += alpha * p[f];
        r[f] -= alpha * q[f];
      }
      ++it;
      rel = std::sqrt(dot(r, r)) / bnorm;
      if (!std::isfinite(rel)) throw Error(Errc::SolverDivergence, "residual is not finite");
      if (rel <= options.rel_tol) break;
      for (std::size_t f = 0; f < nf; ++f) z[f] = r[f] / diag[f];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t f = 0; f < nf; ++f) p[f] = z[f] + beta * p[f];
    }
    if (rel > options.rel_tol) {
      throw Error(Errc::SolverDivergence, "no convergence after " + std::to_string(it) +
                                              " iterations (relative residual " + std::to_string(rel) + ")");
    }
    // report the true residual of the final iterate, not the recursive one
    std::vector<double> ax(nf);
    apply(x, ax);
    double rr = 0.0;
    for (std::size_t f = 0; f < nf; ++f) rr += (rhs[f] - ax[f]) * (rhs[f] - ax[f]);
    est.residual = std::sqrt(rr) / bnorm;
    est.iterations = it;
    for (std::size_t f = 0; f < nf; ++f) u[free_nodes[f]] = x[f];
  }

  double energy = 0.0;
  double flux = 0.0;
  auto edge = [&](std::size_t a, std::size_t b, double w) {
    const double du = u[a] - u[b];
    energy += w * du * du;
    if (spec.c2()[a] && !spec.c2()[b]) flux += w * du;
    if (spec.c2()[b] && !spec.c2()[a]) flux -= w * du;
  };
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t p = g.index(i, j);
      if (i + 1 < g.nx) edge(p, p + 1, horizontal_weight(g, j));
      if (j + 1 < g.ny) edge(p, p + g.nx, vertical_weight(g, i));
    }
  }
  est.value = energy;
  est.flux = flux;
  est.margin_ratio = margin_ratio(spec);
  est.grid = g;

  if (options.keep_fields) {
    est.density.assign(n, 0.0);
    for (std::size_t j = 0; j < g.ny; ++j) {
      for (std::size_t i = 0; i < g.nx; ++i) {
        const std::size_t il = i > 0 ? i - 1 : i, ir = i + 1 < g.nx ? i + 1 : i;
        const std::size_t jl = j > 0 ? j - 1 : j, jr = j + 1 < g.ny ? j + 1 : j;
        const double ux = (u[g.index(ir, j)] - u[g.index(il, j)]) / (g.h * static_cast<double>(ir - il));
        const double uy = (u[g.index(i, jr)] - u[g.index(i, jl)]) / (g.h * static_cast<double>(jr - jl));
        est.density[g.index(i, j)] = std::hypot(ux, uy);
      }
    }
    est.potential = std::move(u);
  }
  return est;
}

}  // namespace qclat

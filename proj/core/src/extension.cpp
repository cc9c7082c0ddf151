#include "qclat/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "parallel.hpp"
#include "qclat/criteria.hpp"
#include "qclat/error.hpp"

namespace qclat {

// ---------------------------------------------------------------------------
// PLMap
// ---------------------------------------------------------------------------

PLMap::PLMap(RealSequenceWindow window)
    : window_(std::move(window)),
      left_slope_(window_[window_.first_index() + 1] - window_[window_.first_index()]),
      right_slope_(window_[window_.last_index()] - window_[window_.last_index() - 1]) {}

double PLMap::eval(double x) const noexcept {
  const auto first = window_.first_index();
  const auto last = window_.last_index();
  const auto xf = static_cast<double>(first);
  const auto xl = static_cast<double>(last);
  if (x <= xf) return window_[first] + left_slope_ * (x - xf);
  if (x >= xl) return window_[last] + right_slope_ * (x - xl);
  const auto n = static_cast<std::int64_t>(std::floor(x));
  const double an = window_[n];
  return an + (window_[n + 1] - an) * (x - static_cast<double>(n));
}

double PLMap::piece_integral(double lo, double hi) const noexcept {
  return (hi - lo) * 0.5 * (eval(lo) + eval(hi));
}

double PLMap::integral(double lo, double hi) const noexcept {
  if (hi < lo) return -integral(hi, lo);
  if (!(hi > lo)) return 0.0;
  const auto xf = static_cast<double>(window_.first_index());
  const auto xl = static_cast<double>(window_.last_index());
  double sum = 0.0;
  double cursor = lo;
  if (cursor < xf) {
    const double end = std::min(hi, xf);
    sum += piece_integral(cursor, end);
    cursor = end;
  }
  while (cursor < hi && cursor < xl) {
    const double next_break = std::min(std::floor(cursor) + 1.0, xl);
    const double end = std::min(hi, next_break);
    sum += piece_integral(cursor, end);
    cursor = end;
  }
  if (cursor < hi) sum += piece_integral(cursor, hi);
  return sum;
}

PLMap pl_map(const RealSequenceWindow& seq) { return PLMap(seq); }

// ---------------------------------------------------------------------------
// Quasisymmetry profile
// ---------------------------------------------------------------------------

QSProfile qs_profile(const PLMap& map, std::span<const double> x_samples, std::span<const double> t_samples,
                     std::optional<double> m) {
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    if (!(t_samples[i] > 0.0)) {
      throw Error(Errc::NonpositiveOffset, "offsets must be > 0", static_cast<std::int64_t>(i));
    }
  }
  QSProfile profile;
  profile.m_used = m ? *m : ratio_report(map.window()).m_hat;
  profile.bound_claimed = qs_constant_C(profile.m_used);
  profile.samples.reserve(x_samples.size() * t_samples.size());
  const double c = profile.bound_claimed;
  for (double x : x_samples) {
    const double fx = map(x);
    for (double t : t_samples) {
      const double ratio = (map(x + t) - fx) / (fx - map(x - t));
      profile.samples.push_back({x, t, ratio});
      profile.rho_hat = std::max(profile.rho_hat, ratio >= 1.0 ? ratio : 1.0 / ratio);
      if (!(ratio <= c && ratio >= 1.0 / c)) ++profile.violations;
    }
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Extension
// ---------------------------------------------------------------------------

namespace {

// Composite Simpson for int_0^1 phi(x + s t) dt, doubling the panel count until
// two successive estimates agree to rel_tol.
double simpson_average(const PLMap& map, double x, double s, const ExtensionOptions& options) {
  auto f = [&](double t) { return map(x + s * t); };
  std::size_t panels = 2;
  double scale = std::max(std::abs(f(0.0)), std::abs(f(1.0)));
  auto estimate = [&](std::size_t n) {
    const double h = 1.0 / static_cast<double>(n);
    double sum = f(0.0) + f(1.0);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = f(h * static_cast<double>(i));
      scale = std::max(scale, std::abs(v));
      sum += (i % 2 == 1 ? 4.0 : 2.0) * v;
    }
    return sum * h / 3.0;
  };
  double previous = estimate(panels);
  for (int d = 0; d < options.simpson_max_doublings; ++d) {
    panels *= 2;
    const double current = estimate(panels);
    if (std::abs(current - previous) <= options.simpson_rel_tol * std::max(std::abs(current), scale)) {
      return current;
    }
    previous = current;
  }
  return previous;
}

Complex extend_upper(const PLMap& map, double x, double y, const ExtensionOptions& options) {
  double alpha = 0.0;
  double beta = 0.0;
  if (options.quadrature == Quadrature::ExactBreakpoints) {
    alpha = map.integral(x, x + y) / y;
    beta = map.integral(x - y, x) / y;
  } else {
    alpha = simpson_average(map, x, y, options);
    beta = simpson_average(map, x, -y, options);
  }
  return {0.5 * (alpha + beta), alpha - beta};
}

}  // namespace

Complex ba_extend(const PLMap& map, Complex z, const ExtensionOptions& options) {
  const double y = z.imag();
  if (y == 0.0) {
    throw Error(Errc::RealAxisInput, "ba_extend needs Im z != 0; evaluate the boundary map directly");
  }
  if (y > 0.0) return extend_upper(map, z.real(), y, options);
  return std::conj(extend_upper(map, z.real(), -y, options));
}

void validate_grid(const Grid& grid) {
  const bool finite = std::isfinite(grid.x0) && std::isfinite(grid.x1) && std::isfinite(grid.y0) &&
                      std::isfinite(grid.y1);
  if (!finite || grid.nx == 0 || grid.ny == 0 || grid.x1 < grid.x0 || grid.y1 < grid.y0 ||
      (grid.nx > 1 && grid.x1 == grid.x0) || (grid.ny > 1 && grid.y1 == grid.y0)) {
    throw Error(Errc::BadGrid, "grid needs finite bounds x0 <= x1, y0 <= y1 and at least one node per axis");
  }
}

ExtensionField extension_field(const PLMap& map, const Grid& grid, const ExtensionOptions& options) {
  validate_grid(grid);
  ExtensionField field;
  field.grid = grid;
  field.values.resize(grid.size());
  detail::parallel_for(grid.ny, options.threads, [&](std::size_t j) {
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      field.values[grid.index(i, j)] = (y == 0.0) ? Complex{map(x), 0.0} : ba_extend(map, {x, y}, options);
    }
  });
  return field;
}

double DilatationField::max_k() const noexcept {
  return k.empty() ? 1.0 : *std::max_element(k.begin(), k.end());
}

double DilatationField::min_k() const noexcept {
  return k.empty() ? 1.0 : *std::min_element(k.begin(), k.end());
}

DilatationField dilatation_field(const PLMap& map, const Grid& grid, std::optional<double> fd_step,
                                 const ExtensionOptions& options) {
  validate_grid(grid);
  double spacing = std::numeric_limits<double>::infinity();
  if (grid.nx > 1) spacing = std::min(spacing, grid.dx());
  if (grid.ny > 1) spacing = std::min(spacing, grid.dy());
  if (!std::isfinite(spacing)) spacing = std::max(1.0, grid.y0);

  const double h = fd_step.value_or(1e-4 * spacing);
  if (!(h > 0.0) || !(h < 0.5 * spacing)) {
    throw Error(Errc::BadGrid, "fd_step must be positive and below half the node spacing");
  }
  if (!(grid.y0 - h > 0.0)) {
    throw Error(Errc::BadGrid, "dilatation grid must lie strictly inside the upper half-plane");
  }

  DilatationField field;
  field.grid = grid;
  field.fd_step = h;
  field.mu.resize(grid.size());
  field.k.resize(grid.size());

  const Complex i_unit{0.0, 1.0};
  detail::parallel_for(grid.ny, options.threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const Complex z = grid.node(i, j);
      const Complex fx = (ba_extend(map, z + h, options) - ba_extend(map, z - h, options)) / (2.0 * h);
      const Complex fy =
          (ba_extend(map, z + i_unit * h, options) - ba_extend(map, z - i_unit * h, options)) / (2.0 * h);
      const Complex dz = fx - i_unit * fy;
      const Complex dzbar = fx + i_unit * fy;
      const double scale = std::abs(fx) + std::abs(fy);
      if (!(std::abs(dz) > 1e-14 * scale) || scale == 0.0) {
        throw Error(Errc::DegenerateJacobian,
                    "|F_x - iF_y| vanishes at node (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                        ")",
                    static_cast<std::int64_t>(grid.index(i, j)));
      }
      const Complex mu = dzbar / dz;
      const double a = std::abs(mu);
      const std::size_t idx = grid.index(i, j);
      field.mu[idx] = mu;
      field.k[idx] = a < 1.0 ? (1.0 + a) / (1.0 - a) : std::numeric_limits<double>::infinity();
    }
  });
  return field;
}

RealSequenceWindow random_M_sequence(double m, std::size_t size, std::uint64_t seed) {
  if (!(m >= 1.0) || !std::isfinite(m)) {
    throw Error(Errc::BadConstant, "M must be a finite number >= 1, got " + std::to_string(m));
  }
  if (size < 3) throw Error(Errc::TooShort, "window_size must be at least 3");

  std::mt19937_64 gen(seed);
  auto gap = [&] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return 1.0 + (m - 1.0) * u;
  };
  std::vector<double> values(size);
  const std::size_t center = size / 2;
  values[center] = 0.0;
  for (std::size_t p = center + 1; p < size; ++p) values[p] = values[p - 1] + gap();
  for (std::size_t p = center; p-- > 0;) values[p] = values[p + 1] - gap();
  return build_sequence(std::move(values), -static_cast<std::int64_t>(center));
}

}  // namespace qclat

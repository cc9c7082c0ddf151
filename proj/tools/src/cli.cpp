#include "cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "qclat/criteria.hpp"
#include "qclat/error.hpp"
#include "qclat/extension.hpp"
#include "qclat/geometry.hpp"
#include "qclat/io.hpp"
#include "qclat/modulus.hpp"

#ifndef QCLAT_VERSION
#define QCLAT_VERSION "0.0.0"
#endif

namespace qclat::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream o;
  for (unsigned int i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return o.str();
}

namespace {

std::vector<double> split_numbers(const std::string& s, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw Error(Errc::ParseError, "not a number: \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Session {
  std::string input_bytes;
  std::vector<std::string> warnings;
  unsigned threads = 0;

  PointInput read_input(const std::string& path, const std::string& format) {
    input_bytes = read_file(path);
    InputFormat f = format_for(path);
    if (format == "csv") f = InputFormat::Csv;
    if (format == "json") f = InputFormat::Json;
    return parse_points(input_bytes, f);
  }
};

unsigned threads_from_env(std::vector<std::string>& warnings) {
  const char* v = std::getenv("QCLAT_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) {
    warnings.push_back("ignoring malformed QCLAT_THREADS");
    return 0;
  }
  return static_cast<unsigned>(n);
}

Grid parse_grid(const std::string& spec) {
  const auto v = split_numbers(spec);
  if (v.size() != 5) throw Error(Errc::BadGrid, "--grid expects x0,x1,y0,y1,res");
  if (!(v[4] >= 2) || v[4] != std::floor(v[4])) throw Error(Errc::BadGrid, "grid resolution must be an integer >= 2");
  Grid g{v[0], v[1], v[2], v[3], static_cast<std::size_t>(v[4]), static_cast<std::size_t>(v[4])};
  validate_grid(g);
  return g;
}

std::vector<Disk> parse_disks(const std::string& spec, const PlanarSet& set) {
  if (spec.rfind("auto:", 0) == 0) {
    const auto n = split_numbers(spec.substr(5));
    if (n.size() != 1 || !(n[0] >= 1) || n[0] != std::floor(n[0])) {
      throw Error(Errc::BadParam, "--disks auto:N needs a positive integer N");
    }
    return auto_disks(set, static_cast<std::size_t>(n[0]));
  }
  std::vector<Disk> disks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto v = split_numbers(item);
    if (v.size() != 3) throw Error(Errc::ParseError, "disk spec must be cx,cy,r");
    disks.push_back(Disk{{v[0], v[1]}, v[2]});
  }
  if (disks.empty()) throw Error(Errc::BadParam, "no disks given");
  return disks;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(Errc::ParseError, "cannot write " + path);
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& s) {
  const auto v = split_numbers(s);
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
    throw Error(Errc::BadParam, "--window expects two integers a,b");
  }
  return {static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1])};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session;
  session.threads = threads_from_env(session.warnings);

  CLI::App app{"Numerical checks for quasiconformal equivalence of discrete planar sets", "qclat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", QCLAT_VERSION);
  std::string out_path;
  std::string format = "auto";
  app.add_option("--out", out_path, "Write the report envelope to this file");
  app.add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "csv", "json"}));

  std::string command;
  std::function<json()> action;
  std::string input;
  std::string svg_path;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Point file (.csv or .json)")->required();
  };

  // check-ratio
  auto* check = app.add_subcommand("check-ratio", "Brute-force ratio test on a real sequence window");
  with_input(check);
  std::optional<double> m_opt;
  std::optional<std::int64_t> base_opt;
  check->add_option("--M", m_opt, "Test against this constant");
  check->add_option("--base", base_opt, "Index of the smallest point");
  check->callback([&] {
    command = "check-ratio";
    action = [&] {
      const auto in = session.read_input(input, format);
      const auto seq = sequence_from_points(in.points, base_opt.value_or(in.base_index));
      if (m_opt) return json(check_ratio(seq, *m_opt));
      return json(ratio_report(seq));
    };
  });

  // decide
  auto* decide = app.add_subcommand("decide", "Decide or test equivalence to the integers");
  with_input(decide);
  DivergenceConfig dcfg;
  decide->add_option("--growth-factor", dcfg.growth_factor, "Per-doubling growth treated as divergence");
  decide->add_option("--doublings", dcfg.doublings, "Consecutive doublings required");
  decide->add_option("--min-window", dcfg.min_window, "Smallest sub-window size");
  decide->callback([&] {
    command = "decide";
    action = [&] { return json(decide_equiv_to_Z(to_planar_set(session.read_input(input, format)), dcfg)); };
  });

  // periodic
  auto* periodic = app.add_subcommand("periodic", "Exact check for periodic descriptors");
  with_input(periodic);
  periodic->callback([&] {
    command = "periodic";
    action = [&] {
      const auto set = to_planar_set(session.read_input(input, format));
      if (std::holds_alternative<MultiplicativePeriodic>(set.descriptor())) {
        return json(periodic_multiplicative_check(set));
      }
      return json(periodic_additive_check(set));
    };
  });

  // extend / dilatation
  std::string grid_spec;
  std::string quadrature = "exact";
  std::optional<double> fd_step;
  auto extension_options = [&] {
    ExtensionOptions o;
    o.quadrature = quadrature == "simpson" ? Quadrature::AdaptiveSimpson : Quadrature::ExactBreakpoints;
    o.threads = session.threads;
    return o;
  };
  auto* extend = app.add_subcommand("extend", "Averaging extension of the piecewise linear boundary map");
  with_input(extend);
  extend->add_option("--grid", grid_spec, "x0,x1,y0,y1,res")->required();
  extend->add_option("--quadrature", quadrature)->check(CLI::IsMember({"exact", "simpson"}));
  extend->add_option("--svg", svg_path, "Scatter plot of the image nodes");
  extend->callback([&] {
    command = "extend";
    action = [&] {
      const auto in = session.read_input(input, format);
      const auto map = pl_map(sequence_from_points(in.points, base_opt.value_or(in.base_index)));
      const auto field = extension_field(map, parse_grid(grid_spec), extension_options());
      if (!svg_path.empty()) write_text(svg_path, svg_scatter(field.values, "extension image nodes"));
      return json(field);
    };
  });
  extend->add_option("--base", base_opt, "Index of the smallest point");

  auto* dil = app.add_subcommand("dilatation", "Beltrami quotient and pointwise dilatation of the extension");
  with_input(dil);
  dil->add_option("--grid", grid_spec, "x0,x1,y0,y1,res (y0 > 0)")->required();
  dil->add_option("--fd-step", fd_step, "Central difference step");
  dil->add_option("--quadrature", quadrature)->check(CLI::IsMember({"exact", "simpson"}));
  dil->add_option("--svg", svg_path, "Heat map of K");
  dil->add_option("--base", base_opt, "Index of the smallest point");
  dil->callback([&] {
    command = "dilatation";
    action = [&] {
      const auto in = session.read_input(input, format);
      const auto map = pl_map(sequence_from_points(in.points, base_opt.value_or(in.base_index)));
      const auto field = dilatation_field(map, parse_grid(grid_spec), fd_step, extension_options());
      if (!svg_path.empty()) {
        const auto& g = field.grid;
        write_text(svg_path, svg_heatmap(field.k, g.nx, g.ny, g.x0, g.x1, g.y0, g.y1, "dilatation K"));
      }
      return json(field);
    };
  });

  // porosity
  auto* poro = app.add_subcommand("porosity", "Estimate the porosity constant on sample disks");
  with_input(poro);
  std::string disk_spec;
  std::optional<double> target_c;
  std::size_t resolution = 256;
  poro->add_option("--disks", disk_spec, "cx,cy,r[;...] or auto:N")->required();
  poro->add_option("--c", target_c, "Target porosity constant");
  poro->add_option("--resolution", resolution, "Candidate grid intervals per diameter");
  poro->add_option("--svg", svg_path, "Scatter plot of the sample");
  poro->callback([&] {
    command = "porosity";
    action = [&] {
      const auto set = to_planar_set(session.read_input(input, format));
      const auto disks = parse_disks(disk_spec, set);
      const auto report = porosity_estimate(set, disks, resolution, target_c, PorosityOptions{session.threads});
      if (!svg_path.empty()) write_text(svg_path, svg_scatter(set.points(), "sample"));
      return json(report);
    };
  });

  // turning
  auto* turning = app.add_subcommand("turning", "Three-point constant of a polyline (points in file order)");
  with_input(turning);
  TurningOptions topt;
  turning->add_option("--samples", topt.samples, "Triples sampled above the exhaustive cap");
  turning->add_option("--seed", topt.seed, "Sampling seed");
  turning->callback([&] {
    command = "turning";
    action = [&] { return json(turning_constant(build_polyline(session.read_input(input, format).points), topt)); };
  });

  // modulus
  auto* modulus = app.add_subcommand("modulus", "Extremal distance between two continua");
  modulus->require_subcommand(1);
  double r_in = 0.0, r_out = 0.0;
  auto* annulus = modulus->add_subcommand("annulus", "Closed form for the round annulus r < |z| < R");
  annulus->add_option("r", r_in)->required();
  annulus->add_option("R", r_out)->required();
  annulus->callback([&] {
    command = "modulus annulus";
    action = [&] {
      ModulusEstimate est;
      est.method = ModulusMethod::AnalyticAnnulus;
      est.value = annulus_modulus(r_in, r_out);
      return json(est);
    };
  });
  auto* condenser = modulus->add_subcommand("condenser", "Grid capacity of a condenser spec");
  condenser->add_option("spec", input, "Condenser spec (.json)")->required();
  SolverOptions sopt;
  condenser->add_option("--rel-tol", sopt.rel_tol, "Relative residual target");
  condenser->add_option("--max-iterations", sopt.max_iterations, "Iteration cap (0 = automatic)");
  condenser->add_option("--svg", svg_path, "Heat map of |grad u|");
  condenser->callback([&] {
    command = "modulus condenser";
    action = [&] {
      session.input_bytes = read_file(input);
      json j;
      try {
        j = json::parse(session.input_bytes);
      } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("malformed JSON: ") + e.what());
      }
      const auto spec = parse_condenser_spec(j);
      sopt.keep_fields = !svg_path.empty();
      const auto est = grid_condenser_modulus(spec, sopt);
      if (!est.margin_ratio) {
        session.warnings.push_back("a continuum touches the box; the value is the capacity inside the box");
      } else if (*est.margin_ratio < 1.0) {
        session.warnings.push_back("box margin is less than the extent of the continua");
      }
      if (!svg_path.empty()) {
        const auto& g = spec.grid();
        write_text(svg_path, svg_heatmap(est.density, g.nx, g.ny, g.x0, g.x(g.nx - 1), g.y0, g.y(g.ny - 1),
                                         "|grad u|"));
      }
      return json(est);
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form constants");
  bounds->require_subcommand(1);
  double arg1 = 0.0, arg2 = 0.0;
  auto* bc = bounds->add_subcommand("C", "Quasisymmetry constant M^4+M^3+M^2+M");
  bc->add_option("M", arg1)->required();
  bc->callback([&] {
    command = "bounds C";
    action = [&] { return json{{"M", number_to_json(arg1)}, {"C", number_to_json(qs_constant_C(arg1))}}; };
  });
  auto* bl = bounds->add_subcommand("L", "Spacing ratio constant 8A^2");
  bl->add_option("A", arg1)->required();
  bl->callback([&] {
    command = "bounds L";
    action = [&] { return json{{"A", number_to_json(arg1)}, {"L", number_to_json(spacing_constant_L(arg1))}}; };
  });
  auto* br = bounds->add_subcommand("ratio-bound", "Ratio bound from K and A");
  br->add_option("K", arg1)->required();
  br->add_option("A", arg2)->required();
  br->callback([&] {
    command = "bounds ratio-bound";
    action = [&] {
      const double l = spacing_constant_L(arg2);
      return json{{"K", number_to_json(arg1)},
                  {"A", number_to_json(arg2)},
                  {"L", number_to_json(l)},
                  {"log_ratio_bound", number_to_json(log_ratio_bound_from_K_L(arg1, l))},
                  {"ratio_bound", number_to_json(ratio_bound_from_K_A(arg1, arg2))}};
    };
  });
  auto* bk = bounds->add_subcommand("k-from-gap", "Lower bound on K forced by a gap ratio");
  bk->add_option("ell", arg1)->required();
  bk->callback([&] {
    command = "bounds k-from-gap";
    action = [&] {
      return json{{"ell", number_to_json(arg1)}, {"K_lower", number_to_json(k_lower_bound_from_gap(arg1))}};
    };
  });

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Generate a named sample set");
  std::string corpus_name;
  std::vector<double> corpus_params;
  std::string window_spec = "-8,8";
  corpus->add_option("name", corpus_name, "integers, gauss, e1, geometric, pm_geometric, additive_periodic, "
                                          "multiplicative_periodic")
      ->required();
  corpus->add_option("params", corpus_params, "Numeric parameters");
  corpus->add_option("--window", window_spec, "Index window a,b");
  corpus->callback([&] {
    command = "corpus";
    action = [&] { return json(corpus_generate(corpus_name, corpus_params, parse_window(window_spec))); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    ReportEnvelope env;
    env.version = QCLAT_VERSION;
    env.command = command;
    env.payload = action();
    if (session.input_bytes.empty()) {
      std::string joined;
      for (const auto& a : args) joined += a + '\0';
      session.input_bytes = joined;
    }
    env.input_digest = sha256_hex(session.input_bytes);
    env.timestamp = utc_timestamp();
    env.warnings = session.warnings;
    const std::string text = json(env).dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      write_text(out_path, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "qclat: " << e.what() << "\n";
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitInput;
  } catch (const std::bad_alloc&) {
    err << "qclat: out of memory\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "qclat: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace qclat::cli

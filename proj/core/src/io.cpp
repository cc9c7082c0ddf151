#include "qclat/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qclat/error.hpp"

namespace qclat {

namespace {

[[noreturn]] void parse_error(const std::string& what, std::optional<std::int64_t> where = std::nullopt) {
  throw Error(Errc::ParseError, what, where);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

json cx_to_json(Complex z) { return json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

Complex cx_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_error("expected a point [x, y]");
  return {number_from_json(j[0]), number_from_json(j[1])};
}

json cx_list(std::span<const Complex> zs) {
  json a = json::array();
  for (Complex z : zs) a.push_back(cx_to_json(z));
  return a;
}

std::vector<Complex> cx_list_from(const json& j) {
  if (!j.is_array()) parse_error("expected an array of points");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(cx_from_json(e));
  return out;
}

json num_list(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> num_list_from(const json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number_from_json(e));
  return out;
}

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class E, std::size_t N>
E enum_from(const json& j, const std::array<E, N>& all) {
  const auto s = j.get<std::string>();
  for (E e : all) {
    if (to_string(e) == s) return e;
  }
  parse_error("unknown enum value \"" + s + "\"");
}

CosetCount coset_from(const json& j) {
  auto c = CosetCount::infinite();
  from_json(j, c);
  return c;
}

PointInput read_json_set(const json& j) {
  if (j.contains("payload") && j.at("payload").is_object()) return read_json_set(j.at("payload"));
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) parse_error("unsupported schema version");
  PointInput in;
  in.points = cx_list_from(field(j, "points"));
  if (j.contains("descriptor") && !j.at("descriptor").is_null()) in.descriptor = j.at("descriptor").get<Descriptor>();
  if (j.contains("coverage")) in.coverage = j.at("coverage").get<Rect>();
  if (j.contains("base_index")) in.base_index = j.at("base_index").get<std::int64_t>();
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

InputFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? InputFormat::Json : InputFormat::Csv;
}

PointInput parse_points_csv(std::string_view text) {
  PointInput in;
  std::int64_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const auto x = parse_double(line.substr(0, comma));
    std::optional<double> y = 0.0;
    if (comma != std::string_view::npos) {
      const auto rest = line.substr(comma + 1);
      if (rest.find(',') != std::string_view::npos) parse_error("expected \"x,y\"", line_no);
      y = parse_double(rest);
    }
    if (!x || !y) parse_error("expected \"x,y\" with numeric fields", line_no);
    in.points.emplace_back(*x, *y);
  }
  return in;
}

PointInput parse_points_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what(), static_cast<std::int64_t>(e.byte));
  }
  try {
    return read_json_set(j);
  } catch (const json::exception& e) {
    parse_error(std::string("bad point file: ") + e.what());
  }
}

PointInput parse_points(std::string_view text, InputFormat format) {
  return format == InputFormat::Json ? parse_points_json(text) : parse_points_csv(text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

PlanarSet to_planar_set(const PointInput& input) {
  return build_planar_set(input.points, input.descriptor, input.coverage);
}

PlanarSet load_points(const std::filesystem::path& path, std::optional<InputFormat> format) {
  return to_planar_set(parse_points(read_file(path), format.value_or(format_for(path))));
}

RealSequenceWindow sequence_from_points(std::span<const Complex> points, std::int64_t base_index) {
  std::vector<double> xs;
  xs.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].imag() != 0.0) {
      throw Error(Errc::BadParam, "sequence input must lie on the real line", static_cast<std::int64_t>(i));
    }
    xs.push_back(points[i].real());
  }
  std::sort(xs.begin(), xs.end());
  return build_sequence(std::move(xs), base_index);
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

std::vector<std::string> corpus_names() {
  return {"integers", "gauss", "e1", "geometric", "pm_geometric", "additive_periodic", "multiplicative_periodic"};
}

namespace {

double param(std::span<const double> params, std::size_t i, std::string_view name) {
  if (i >= params.size()) throw Error(Errc::BadParam, std::string(name) + " needs parameter " + std::to_string(i + 1));
  return params[i];
}

void require_above_one(double v, std::string_view what) {
  if (!(v > 1.0) || !std::isfinite(v)) {
    throw Error(Errc::BadParam, std::string(what) + " must be a finite number > 1, got " + std::to_string(v));
  }
}

std::vector<Complex> pairs_to_points(std::span<const double> flat, std::string_view name) {
  if (flat.empty() || flat.size() % 2 != 0) {
    throw Error(Errc::BadParam, std::string(name) + " representatives are given as re,im pairs");
  }
  std::vector<Complex> out;
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) out.emplace_back(flat[i], flat[i + 1]);
  return out;
}

}  // namespace

PlanarSet corpus_generate(std::string_view name, std::span<const double> params,
                          std::pair<std::int64_t, std::int64_t> window) {
  const auto [lo, hi] = window;
  if (lo > hi) throw Error(Errc::BadParam, "empty corpus window");
  if (hi - lo > 1'000'000) throw Error(Errc::BadParam, "corpus window too large");
  const double inf = std::numeric_limits<double>::infinity();
  const double xlo = static_cast<double>(lo) - 0.5, xhi = static_cast<double>(hi) + 0.5;
  std::vector<Complex> pts;

  if (name == "integers") {
    for (auto n = lo; n <= hi; ++n) pts.emplace_back(static_cast<double>(n), 0.0);
    return build_planar_set(std::move(pts), AdditivePeriodic{{Complex{0.0, 0.0}}, CosetCount::finite(1)},
                            Rect{xlo, xhi, -inf, inf});
  }
  if (name == "gauss") {
    std::vector<Complex> reps;
    for (auto n = lo; n <= hi; ++n) reps.emplace_back(0.0, static_cast<double>(n));
    for (auto n = lo; n <= hi; ++n) {
      for (auto m = lo; m <= hi; ++m) pts.emplace_back(static_cast<double>(m), static_cast<double>(n));
    }
    return build_planar_set(std::move(pts), AdditivePeriodic{std::move(reps), CosetCount::infinite()},
                            Rect{xlo, xhi, xlo, xhi});
  }
  if (name == "e1") {
    // Z + i{2^n : n >= 0}; heights 2^0 .. 2^N with N = params[0] (default: the
    // window's upper end), horizontal extent from the window
    std::int64_t top = std::max<std::int64_t>(hi, 0);
    if (!params.empty()) {
      if (!(params[0] >= 0) || params[0] != std::floor(params[0])) {
        throw Error(Errc::BadParam, "e1 height exponent must be a nonnegative integer");
      }
      top = static_cast<std::int64_t>(std::min(params[0], 1e6));
    }
    if (top > 60) throw Error(Errc::BadParam, "e1 height exponent above 60");
    std::vector<Complex> reps;
    for (std::int64_t n = 0; n <= top; ++n) reps.emplace_back(0.0, std::ldexp(1.0, static_cast<int>(n)));
    for (const Complex r : reps) {
      for (auto m = lo; m <= hi; ++m) pts.emplace_back(static_cast<double>(m), r.imag());
    }
    const double y_top = 1.5 * std::ldexp(1.0, static_cast<int>(top));
    return build_planar_set(std::move(pts), AdditivePeriodic{std::move(reps), CosetCount::infinite()},
                            Rect{xlo, xhi, -inf, y_top});
  }
  if (name == "geometric" || name == "pm_geometric") {
    const double r = param(params, 0, name);
    require_above_one(r, name == "geometric" ? "r" : "s");
    // the sequences start at n = 0; the window's upper end sets the last exponent
    const auto last = std::max<std::int64_t>(hi, 0);
    if (static_cast<double>(last) * std::log(r) > 700.0) throw Error(Errc::BadParam, "corpus window overflows");
    for (std::int64_t n = 0; n <= last; ++n) {
      const double v = std::pow(r, static_cast<double>(n));
      if (name == "pm_geometric") pts.emplace_back(-v, 0.0);
      pts.emplace_back(v, 0.0);
    }
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    // complete up to halfway to the first missing term
    const double outer = 0.5 * (std::pow(r, static_cast<double>(last)) + std::pow(r, static_cast<double>(last + 1)));
    Rect coverage{name == "pm_geometric" ? -outer : -inf, outer, -inf, inf};
    return build_planar_set(std::move(pts), CorpusFormula{std::string(name), {r}}, coverage);
  }
  if (name == "additive_periodic") {
    auto reps = pairs_to_points(params, name);
    for (const Complex r : reps) {
      for (auto m = lo; m <= hi; ++m) pts.push_back(r + static_cast<double>(m));
    }
    const auto m = reps.size();
    return build_planar_set(std::move(pts), AdditivePeriodic{std::move(reps), CosetCount::finite(m)},
                            Rect{xlo, xhi, -inf, inf});
  }
  if (name == "multiplicative_periodic") {
    const double lambda = param(params, 0, name);
    require_above_one(lambda, "lambda");
    auto reps = pairs_to_points(params.subspan(1), name);
    if (std::max(std::abs(lo), std::abs(hi)) * std::log(lambda) > 700.0) {
      throw Error(Errc::BadParam, "corpus window overflows");
    }
    for (auto k = lo; k <= hi; ++k) {
      const double scale = std::pow(lambda, static_cast<double>(k));
      for (const Complex r : reps) pts.push_back(r * scale);
    }
    const auto m = reps.size();
    return build_planar_set(std::move(pts), MultiplicativePeriodic{lambda, std::move(reps), CosetCount::finite(m)});
  }
  throw Error(Errc::UnknownCorpus, "unknown corpus \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------
// Condenser specs
// ---------------------------------------------------------------------------

namespace {

NodeMask mask_from_json(const CondenserGrid& grid, const json& j) {
  const auto shape = field(j, "shape").get<std::string>();
  if (shape == "disk" || shape == "outside_disk") {
    const Complex c = cx_from_json(field(j, "center"));
    const double r = number_from_json(field(j, "radius"));
    if (!(r > 0.0)) throw Error(Errc::InvalidCondenser, "disk radius must be positive");
    return shape == "disk" ? mask_disk(grid, c, r) : mask_outside_disk(grid, c, r);
  }
  if (shape == "segment") return mask_segment(grid, cx_from_json(field(j, "a")), cx_from_json(field(j, "b")));
  if (shape == "nodes") {
    std::vector<std::pair<std::size_t, std::size_t>> nodes;
    for (const auto& n : field(j, "nodes")) nodes.emplace_back(n.at(0).get<std::size_t>(), n.at(1).get<std::size_t>());
    return mask_nodes(grid, nodes);
  }
  throw Error(Errc::InvalidCondenser, "unknown continuum shape \"" + shape + "\"");
}

}  // namespace

CondenserSpec parse_condenser_spec(const json& j) {
  try {
    const auto& box = field(j, "box");
    if (!box.is_array() || box.size() != 4) parse_error("box must be [x0, x1, y0, y1]");
    const auto grid = make_condenser_grid(number_from_json(box[0]), number_from_json(box[1]),
                                          number_from_json(box[2]), number_from_json(box[3]),
                                          number_from_json(field(j, "h")));
    return build_condenser(grid, mask_from_json(grid, field(j, "c1")), mask_from_json(grid, field(j, "c2")));
  } catch (const json::exception& e) {
    parse_error(std::string("bad condenser spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a number, got " + j.dump());
}

void to_json(json& j, const ReportEnvelope& e) {
  j = json{{"schema", e.schema},   {"tool", e.tool},           {"version", e.version},
           {"command", e.command}, {"input_digest", e.input_digest}, {"timestamp", e.timestamp},
           {"payload", e.payload}, {"warnings", e.warnings}};
}

void from_json(const json& j, ReportEnvelope& e) {
  e.schema = j.at("schema").get<int>();
  e.tool = j.at("tool").get<std::string>();
  e.version = j.at("version").get<std::string>();
  e.command = j.at("command").get<std::string>();
  e.input_digest = j.at("input_digest").get<std::string>();
  e.timestamp = j.at("timestamp").get<std::string>();
  e.payload = j.at("payload");
  e.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const CosetCount& c) {
  if (c.is_finite()) {
    j = c.value();
  } else {
    j = "infinite";
  }
}

void from_json(const json& j, CosetCount& c) {
  if (j.is_string() && j.get<std::string>() == "infinite") {
    c = CosetCount::infinite();
  } else if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    c = CosetCount::finite(j.get<std::size_t>());
  } else {
    parse_error("coset count must be a nonnegative integer or \"infinite\"");
  }
}

void to_json(json& j, const Descriptor& d) {
  j = json{{"kind", descriptor_kind(d)}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AdditivePeriodic>) {
          j["reps"] = cx_list(v.reps);
          j["count"] = v.count;
        } else if constexpr (std::is_same_v<T, MultiplicativePeriodic>) {
          j["factor"] = number_to_json(v.factor);
          j["reps"] = cx_list(v.reps);
          j["count"] = v.count;
        } else if constexpr (std::is_same_v<T, CorpusFormula>) {
          j["name"] = v.name;
          j["params"] = num_list(v.params);
        }
      },
      d);
}

void from_json(const json& j, Descriptor& d) {
  const auto kind = field(j, "kind").get<std::string>();
  auto reps_and_count = [&](auto& v) {
    v.reps = cx_list_from(field(j, "reps"));
    v.count = j.contains("count") ? coset_from(j.at("count")) : CosetCount::finite(v.reps.size());
  };
  if (kind == "explicit") {
    d = ExplicitSet{};
  } else if (kind == "additive_periodic") {
    AdditivePeriodic v;
    reps_and_count(v);
    d = std::move(v);
  } else if (kind == "multiplicative_periodic") {
    MultiplicativePeriodic v;
    v.factor = j.contains("factor") ? number_from_json(j.at("factor")) : 2.0;
    reps_and_count(v);
    d = std::move(v);
  } else if (kind == "corpus") {
    d = CorpusFormula{field(j, "name").get<std::string>(),
                      j.contains("params") ? num_list_from(j.at("params")) : std::vector<double>{}};
  } else {
    parse_error("unknown descriptor kind \"" + kind + "\"");
  }
}

void to_json(json& j, const Rect& r) {
  j = json::array({number_to_json(r.x_min), number_to_json(r.x_max), number_to_json(r.y_min), number_to_json(r.y_max)});
}

void from_json(const json& j, Rect& r) {
  if (!j.is_array() || j.size() != 4) parse_error("coverage must be [x_min, x_max, y_min, y_max]");
  r = Rect{number_from_json(j[0]), number_from_json(j[1]), number_from_json(j[2]), number_from_json(j[3])};
}

void to_json(json& j, const PlanarSet& s) {
  j = json{{"schema", kSchemaVersion},
           {"points", cx_list(s.points())},
           {"descriptor", s.descriptor()},
           {"coverage", s.coverage()}};
}

void to_json(json& j, const RatioWitness& w) { j = json{{"n", w.n}, {"k", w.k}, {"ratio", number_to_json(w.ratio)}}; }

void from_json(const json& j, RatioWitness& w) {
  w.n = j.at("n").get<std::int64_t>();
  w.k = j.at("k").get<std::int64_t>();
  w.ratio = number_from_json(j.at("ratio"));
}

void to_json(json& j, const WindowGrowth& g) { j = json{{"size", g.size}, {"m_hat", number_to_json(g.m_hat)}}; }

void from_json(const json& j, WindowGrowth& g) {
  g.size = j.at("size").get<std::size_t>();
  g.m_hat = number_from_json(j.at("m_hat"));
}

void to_json(json& j, const Evidence& e) {
  j = json::object();
  if (e.m_hat) j["m_hat"] = number_to_json(*e.m_hat);
  put_opt(j, "witness", e.witness);
  put_opt(j, "coset_count", e.coset_count);
  if (e.window) j["window"] = json::array({e.window->first, e.window->second});
  if (!e.growth.empty()) j["growth"] = e.growth;
  if (!e.notes.empty()) j["notes"] = e.notes;
}

void from_json(const json& j, Evidence& e) {
  e = Evidence{};
  if (j.contains("m_hat")) e.m_hat = number_from_json(j.at("m_hat"));
  if (j.contains("witness")) e.witness = j.at("witness").get<RatioWitness>();
  if (j.contains("coset_count")) e.coset_count = coset_from(j.at("coset_count"));
  if (j.contains("window")) e.window = std::pair{j.at("window").at(0).get<std::int64_t>(), j.at("window").at(1).get<std::int64_t>()};
  if (j.contains("growth")) e.growth = j.at("growth").get<std::vector<WindowGrowth>>();
  if (j.contains("notes")) e.notes = j.at("notes").get<std::vector<std::string>>();
}

void to_json(json& j, const EquivalenceVerdict& v) {
  j = json{{"verdict", to_string(v.kind)},
           {"exact", v.is_exact()},
           {"target", v.target},
           {"theorem", v.theorem},
           {"evidence", v.evidence}};
}

void from_json(const json& j, EquivalenceVerdict& v) {
  v.kind = enum_from(j.at("verdict"), std::array{VerdictKind::ExactYes, VerdictKind::ExactNo,
                                                 VerdictKind::ConsistentWithEquivalence, VerdictKind::Inconsistent,
                                                 VerdictKind::Inconclusive});
  v.target = j.at("target").get<std::string>();
  v.theorem = j.at("theorem").get<std::string>();
  v.evidence = j.at("evidence").get<Evidence>();
}

void to_json(json& j, const RatioReport& r) {
  j = json{{"m_hat", number_to_json(r.m_hat)}, {"witness", r.witness}, {"pairs_tested", r.pairs_tested}};
}

void from_json(const json& j, RatioReport& r) {
  r.m_hat = number_from_json(j.at("m_hat"));
  r.witness = j.at("witness").get<RatioWitness>();
  r.pairs_tested = j.at("pairs_tested").get<std::size_t>();
}

void to_json(json& j, const RatioCheck& r) {
  j = json{{"pass", r.pass}, {"M", number_to_json(r.m)}, {"report", r.report}};
}

void from_json(const json& j, RatioCheck& r) {
  r.pass = j.at("pass").get<bool>();
  r.m = number_from_json(j.at("M"));
  r.report = j.at("report").get<RatioReport>();
}

void to_json(json& j, const SpacingViolation& v) {
  j = json{{"n", v.n},
           {"k", v.k},
           {"family", to_string(v.family)},
           {"quantity", number_to_json(v.quantity)},
           {"bound", number_to_json(v.bound)}};
}

void from_json(const json& j, SpacingViolation& v) {
  v.n = j.at("n").get<std::int64_t>();
  v.k = j.at("k").get<std::int64_t>();
  v.family = enum_from(j.at("family"), std::array{SpacingFamily::ConsecutiveGap, SpacingFamily::SpanUpper,
                                                  SpacingFamily::SpanLower, SpacingFamily::RatioUpper,
                                                  SpacingFamily::RatioLower});
  v.quantity = number_from_json(j.at("quantity"));
  v.bound = number_from_json(j.at("bound"));
}

void to_json(json& j, const SpacingReport& r) {
  j = json{{"A", number_to_json(r.a_used)},          {"L", number_to_json(r.l_bound)},
           {"ok", r.ok()},                           {"violation_count", r.violation_count},
           {"l_hat", number_to_json(r.l_hat)},       {"violations", r.violations}};
}

void from_json(const json& j, SpacingReport& r) {
  r.a_used = number_from_json(j.at("A"));
  r.l_bound = number_from_json(j.at("L"));
  r.violation_count = j.at("violation_count").get<std::size_t>();
  r.l_hat = number_from_json(j.at("l_hat"));
  r.violations = j.at("violations").get<std::vector<SpacingViolation>>();
}

void to_json(json& j, const QSSample& s) {
  j = json{{"x", number_to_json(s.x)}, {"t", number_to_json(s.t)}, {"ratio", number_to_json(s.ratio)}};
}

void from_json(const json& j, QSSample& s) {
  s.x = number_from_json(j.at("x"));
  s.t = number_from_json(j.at("t"));
  s.ratio = number_from_json(j.at("ratio"));
}

void to_json(json& j, const QSProfile& p) {
  j = json{{"rho_hat", number_to_json(p.rho_hat)},
           {"bound_claimed", number_to_json(p.bound_claimed)},
           {"M", number_to_json(p.m_used)},
           {"violations", p.violations},
           {"samples", p.samples}};
}

void from_json(const json& j, QSProfile& p) {
  p.rho_hat = number_from_json(j.at("rho_hat"));
  p.bound_claimed = number_from_json(j.at("bound_claimed"));
  p.m_used = number_from_json(j.at("M"));
  p.violations = j.at("violations").get<std::size_t>();
  p.samples = j.at("samples").get<std::vector<QSSample>>();
}

void to_json(json& j, const Grid& g) {
  j = json{{"x0", number_to_json(g.x0)}, {"x1", number_to_json(g.x1)}, {"y0", number_to_json(g.y0)},
           {"y1", number_to_json(g.y1)}, {"nx", g.nx},                  {"ny", g.ny}};
}

void from_json(const json& j, Grid& g) {
  g.x0 = number_from_json(j.at("x0"));
  g.x1 = number_from_json(j.at("x1"));
  g.y0 = number_from_json(j.at("y0"));
  g.y1 = number_from_json(j.at("y1"));
  g.nx = j.at("nx").get<std::size_t>();
  g.ny = j.at("ny").get<std::size_t>();
}

void to_json(json& j, const ExtensionField& f) {
  j = json{{"grid", f.grid}, {"vertical_scale", number_to_json(f.vertical_scale)}, {"values", cx_list(f.values)}};
}

void from_json(const json& j, ExtensionField& f) {
  f.grid = j.at("grid").get<Grid>();
  f.vertical_scale = number_from_json(j.at("vertical_scale"));
  f.values = cx_list_from(j.at("values"));
}

void to_json(json& j, const DilatationField& f) {
  j = json{{"grid", f.grid},
           {"fd_step", number_to_json(f.fd_step)},
           {"max_K", number_to_json(f.max_k())},
           {"min_K", number_to_json(f.min_k())},
           {"mu", cx_list(f.mu)},
           {"K", num_list(f.k)}};
}

void from_json(const json& j, DilatationField& f) {
  f.grid = j.at("grid").get<Grid>();
  f.fd_step = number_from_json(j.at("fd_step"));
  f.mu = cx_list_from(j.at("mu"));
  f.k = num_list_from(j.at("K"));
}

void to_json(json& j, const Disk& d) { j = json{{"center", cx_to_json(d.center)}, {"radius", number_to_json(d.radius)}}; }

void from_json(const json& j, Disk& d) {
  d.center = cx_from_json(j.at("center"));
  d.radius = number_from_json(j.at("radius"));
}

void to_json(json& j, const DiskPorosity& d) {
  j = json{{"disk", d.disk},
           {"required_c", number_to_json(d.required_c)},
           {"best_point", cx_to_json(d.best_point)},
           {"best_distance", number_to_json(d.best_distance)},
           {"candidates", d.candidates}};
}

void from_json(const json& j, DiskPorosity& d) {
  d.disk = j.at("disk").get<Disk>();
  d.required_c = number_from_json(j.at("required_c"));
  d.best_point = cx_from_json(j.at("best_point"));
  d.best_distance = number_from_json(j.at("best_distance"));
  d.candidates = j.at("candidates").get<std::size_t>();
}

void to_json(json& j, const PorosityReport& r) {
  j = json{{"c_hat", number_to_json(r.c_hat)},
           {"resolution", r.resolution},
           {"max_grid_step", number_to_json(r.max_grid_step)},
           {"per_disk", r.per_disk}};
  if (r.target_c) j["target_c"] = number_to_json(*r.target_c);
  put_opt(j, "pass", r.pass);
}

void from_json(const json& j, PorosityReport& r) {
  r.c_hat = number_from_json(j.at("c_hat"));
  r.resolution = j.at("resolution").get<std::size_t>();
  r.max_grid_step = number_from_json(j.at("max_grid_step"));
  r.per_disk = j.at("per_disk").get<std::vector<DiskPorosity>>();
  r.target_c = j.contains("target_c") ? std::optional(number_from_json(j.at("target_c"))) : std::nullopt;
  r.pass = j.contains("pass") ? std::optional(j.at("pass").get<bool>()) : std::nullopt;
}

void to_json(json& j, const TurningReport& r) {
  j = json{{"a_hat", number_to_json(r.a_hat)},
           {"witness", r.witness},
           {"reversed", r.reversed},
           {"sampled", r.sampled},
           {"triples_tested", r.triples_tested}};
}

void from_json(const json& j, TurningReport& r) {
  r.a_hat = number_from_json(j.at("a_hat"));
  r.witness = j.at("witness").get<std::array<std::size_t, 3>>();
  r.reversed = j.at("reversed").get<bool>();
  r.sampled = j.at("sampled").get<bool>();
  r.triples_tested = j.at("triples_tested").get<std::size_t>();
}

void to_json(json& j, const VuorinenBound& b) {
  j = json{{"value", number_to_json(b.value)},
           {"min_diam", number_to_json(b.min_diam)},
           {"dist", number_to_json(b.dist)}};
}

void from_json(const json& j, VuorinenBound& b) {
  b.value = number_from_json(j.at("value"));
  b.min_diam = number_from_json(j.at("min_diam"));
  b.dist = number_from_json(j.at("dist"));
}

void to_json(json& j, const CondenserGrid& g) {
  j = json{{"x0", number_to_json(g.x0)}, {"y0", number_to_json(g.y0)}, {"h", number_to_json(g.h)},
           {"nx", g.nx},                 {"ny", g.ny}};
}

void from_json(const json& j, CondenserGrid& g) {
  g.x0 = number_from_json(j.at("x0"));
  g.y0 = number_from_json(j.at("y0"));
  g.h = number_from_json(j.at("h"));
  g.nx = j.at("nx").get<std::size_t>();
  g.ny = j.at("ny").get<std::size_t>();
}

void to_json(json& j, const ModulusEstimate& m) {
  j = json{{"value", number_to_json(m.value)},
           {"method", to_string(m.method)},
           {"residual", number_to_json(m.residual)},
           {"iterations", m.iterations},
           {"unknowns", m.unknowns}};
  if (m.flux) j["flux"] = number_to_json(*m.flux);
  if (m.margin_ratio) j["margin_ratio"] = number_to_json(*m.margin_ratio);
  put_opt(j, "grid", m.grid);
}

void from_json(const json& j, ModulusEstimate& m) {
  m = ModulusEstimate{};
  m.value = number_from_json(j.at("value"));
  m.method = enum_from(j.at("method"), std::array{ModulusMethod::AnalyticAnnulus, ModulusMethod::VuorinenLower,
                                                  ModulusMethod::GridCapacity});
  m.residual = number_from_json(j.at("residual"));
  m.iterations = j.at("iterations").get<std::size_t>();
  m.unknowns = j.at("unknowns").get<std::size_t>();
  if (j.contains("flux")) m.flux = number_from_json(j.at("flux"));
  if (j.contains("margin_ratio")) m.margin_ratio = number_from_json(j.at("margin_ratio"));
  if (j.contains("grid")) m.grid = j.at("grid").get<CondenserGrid>();
}

}  // namespace qclat

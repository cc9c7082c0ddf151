#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qclat/criteria.hpp"
#include "qclat/extension.hpp"
#include "qclat/geometry.hpp"
#include "qclat/modulus.hpp"
#include "qclat/planar_set.hpp"
#include "qclat/sequence.hpp"
#include "qclat/verdict.hpp"

namespace qclat {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class InputFormat { Csv, Json };

/// Picks the format from the file extension (.json, anything else is CSV).
InputFormat format_for(const std::filesystem::path& path);

/// Raw contents of a point file, before the set invariants are enforced.
struct PointInput {
  std::vector<Complex> points;  // file order
  std::optional<Descriptor> descriptor;
  Rect coverage;
  std::int64_t base_index = 0;
};

/// CSV: one "x,y" (or bare "x") per line; blank lines and '#' comments skipped.
/// Throws ParseError located at the 1-based line.
PointInput parse_points_csv(std::string_view text);

/// JSON: {"schema":1, "points":[[x,y],...], "descriptor":{...}, "base_index":n,
/// "coverage":[x0,x1,y0,y1]}. Also accepts a report envelope whose payload is a set.
PointInput parse_points_json(std::string_view text);

PointInput parse_points(std::string_view text, InputFormat format);

std::string read_file(const std::filesystem::path& path);

/// Parses and validates a point file. ParseError for unreadable/malformed
/// files; set invariant errors are forwarded unchanged.
PlanarSet load_points(const std::filesystem::path& path, std::optional<InputFormat> format = std::nullopt);

PlanarSet to_planar_set(const PointInput& input);

/// Sorted real parts of a real sample as a sequence window starting at base_index.
/// Throws BadParam when a point is off the real line.
RealSequenceWindow sequence_from_points(std::span<const Complex> points, std::int64_t base_index = 0);

/// Named sample sets. Names: integers, gauss, e1([N]), geometric(r),
/// pm_geometric(s), additive_periodic(re,im,...), multiplicative_periodic(lambda,re,im,...).
/// The window bounds the generating index (the geometric families always start at
/// n = 0 and only use its upper end); coverage records where the sample is complete.
PlanarSet corpus_generate(std::string_view name, std::span<const double> params,
                          std::pair<std::int64_t, std::int64_t> window = {-8, 8});

std::vector<std::string> corpus_names();

/// {"box":[x0,x1,y0,y1], "h":h, "c1":shape, "c2":shape} where a shape is
/// {"shape":"disk"|"outside_disk","center":[x,y],"radius":r},
/// {"shape":"segment","a":[x,y],"b":[x,y]} or {"shape":"nodes","nodes":[[i,j],...]}.
CondenserSpec parse_condenser_spec(const json& j);

struct ReportEnvelope {
  int schema = kSchemaVersion;
  std::string tool = "qclat";
  std::string version;
  std::string command;
  std::string input_digest;
  std::string timestamp;
  json payload;
  std::vector<std::string> warnings;
};

// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
json number_to_json(double v);
double number_from_json(const json& j);

void to_json(json& j, const ReportEnvelope& e);
void from_json(const json& j, ReportEnvelope& e);

void to_json(json& j, const CosetCount& c);
void from_json(const json& j, CosetCount& c);
void to_json(json& j, const Descriptor& d);
void from_json(const json& j, Descriptor& d);
void to_json(json& j, const Rect& r);
void from_json(const json& j, Rect& r);
void to_json(json& j, const PlanarSet& s);

void to_json(json& j, const RatioWitness& w);
void from_json(const json& j, RatioWitness& w);
void to_json(json& j, const WindowGrowth& g);
void from_json(const json& j, WindowGrowth& g);
void to_json(json& j, const Evidence& e);
void from_json(const json& j, Evidence& e);
void to_json(json& j, const EquivalenceVerdict& v);
void from_json(const json& j, EquivalenceVerdict& v);

void to_json(json& j, const RatioReport& r);
void from_json(const json& j, RatioReport& r);
void to_json(json& j, const RatioCheck& r);
void from_json(const json& j, RatioCheck& r);
void to_json(json& j, const SpacingViolation& v);
void from_json(const json& j, SpacingViolation& v);
void to_json(json& j, const SpacingReport& r);
void from_json(const json& j, SpacingReport& r);

void to_json(json& j, const QSSample& s);
void from_json(const json& j, QSSample& s);
void to_json(json& j, const QSProfile& p);
void from_json(const json& j, QSProfile& p);
void to_json(json& j, const Grid& g);
void from_json(const json& j, Grid& g);
void to_json(json& j, const ExtensionField& f);
void from_json(const json& j, ExtensionField& f);
void to_json(json& j, const DilatationField& f);
void from_json(const json& j, DilatationField& f);

void to_json(json& j, const Disk& d);
void from_json(const json& j, Disk& d);
void to_json(json& j, const DiskPorosity& d);
void from_json(const json& j, DiskPorosity& d);
void to_json(json& j, const PorosityReport& r);
void from_json(const json& j, PorosityReport& r);
void to_json(json& j, const TurningReport& r);
void from_json(const json& j, TurningReport& r);

void to_json(json& j, const VuorinenBound& b);
void from_json(const json& j, VuorinenBound& b);
void to_json(json& j, const CondenserGrid& g);
void from_json(const json& j, CondenserGrid& g);
/// Potential and density fields are omitted; they go to SVG output instead.
void to_json(json& j, const ModulusEstimate& m);
void from_json(const json& j, ModulusEstimate& m);

// SVG 1.1 output. Presentation only.
std::string svg_scatter(std::span<const Complex> points, std::string_view title = {});
/// Heat map of a nodal scalar field on an nx-by-ny lattice (row-major, j*nx+i),
/// drawn over [x0,x1] x [y0,y1]. Non-finite values are drawn black.
std::string svg_heatmap(std::span<const double> values, std::size_t nx, std::size_t ny, double x0, double x1,
                        double y0, double y1, std::string_view title = {});

}  // namespace qclat

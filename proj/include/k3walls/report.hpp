#pragma once

#include "k3walls/cones.hpp"
#include "k3walls/walls.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3walls {

/// Invalid configuration or annotation text. what() carries "line N: ..."
/// when the problem is tied to a line.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Integer h2 = 0;
  MukaiVector v;
  /// Vertical rays searched for destabilizers; each lies strictly on one
  /// side of the vertical wall.
  std::vector<Rational> rays;
  unsigned rank_bound = 50;
  std::optional<std::string> annotations;
  std::string out = ".";
  unsigned scale = 1024;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a key=value document (keys h2, v, rays, rank_bound, annotations,
/// out, scale; '#' starts a comment). Without `rays`, the two rays
/// v.c/v.r -+ sqrt(Q) are used when sqrt(Q) is rational and positive; none
/// are used when v^2 < 0. Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// Replaces or appends `key=value` lines; later entries win.
std::string apply_overrides(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides);

/// Canonical text with every key present; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& cfg);

struct WallAnnotation {
  std::string name;
  std::optional<bool> actual;
  /// Model reached by crossing the wall away from the Gieseker chamber.
  std::string model;
  std::string description;

  friend bool operator==(const WallAnnotation&, const WallAnnotation&) = default;
};

struct AnnotationTable {
  std::string gieseker_model;
  std::map<MukaiVector, WallAnnotation> walls;  // keyed by witness class

  const WallAnnotation* find(const MukaiVector& witness) const;
};

/// INI-like text: a [gieseker] section with `model`, and [wall r,c,s]
/// sections with name, actual (yes/no), model, description.
AnnotationTable parse_annotations(const std::string& text);

enum class WallSide { Vertical, Left, Right };
std::string to_string(WallSide side);

struct WallEntry {
  WallSide side = WallSide::Vertical;
  Wall wall;
  /// Ray on which the wall was found and alpha^2 of the crossing.
  std::optional<std::pair<Rational, Rational>> crossing;
  WallTypeRecord type;
  std::optional<NSRay> image;
  std::optional<WallAnnotation> annotation;

  /// Annotated as a genuine wall, or not annotated and numerically typed.
  bool counts_for_cones() const;
};

struct RayEntry {
  Rational beta0;
  Side side = Side::LeftOfVertical;
  std::vector<MukaiVector> candidates;
  SaturationEvidence saturation;
};

struct RunReport {
  RunConfig config;
  Integer v_square;
  std::optional<Rational> q;
  std::vector<WallEntry> walls;  // sorted by center
  std::vector<RayEntry> rays;
  bool search_performed = false;
  std::optional<StabilityPoint> ample_point;
  std::optional<ConeChart> cones;
  std::string gieseker_model;
  std::vector<std::string> notes;
};

/// Runs every stage for a validated config. Errors from the modules are
/// rethrown with the wall or ray they concern prepended.
RunReport run_pipeline(const RunConfig& cfg, const AnnotationTable& annotations = {});

/// Deterministic structured text: one `key = value` per line, sections in
/// brackets, rationals as p/q.
std::string render_report(const RunReport& report);

/// Short human-readable listings used by the CLI.
std::string render_walls_summary(const RunReport& report);
std::string render_cones_summary(const RunReport& report);

/// Style table shared by both figures.
struct SvgStyle {
  const char* positive = "#2a9d3a";
  const char* divisorial = "#c0392b";
  const char* flopping = "#1f5fbf";
  const char* numerical = "#999999";
  const char* ray = "#555555";
  const char* hole = "#000000";
};

/// The (beta, alpha) half-plane. x = beta * scale, y = -alpha * scale;
/// irrational coordinates are truncated toward zero at 6 decimals.
std::string render_halfplane_svg(const RunReport& report);

/// The positive cone in (e1, e2)-coordinates with Mov, Nef, chamber walls
/// and the ample class.
std::string render_ns_cone_svg(const RunReport& report);

}  // namespace k3walls

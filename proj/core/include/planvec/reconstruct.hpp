#pragma once

// Metric 3D model from vectorized walls and door/window symbols.
//
// Metric plan coordinates: X = x * scale, Y = -y * scale (image rows grow
// downward, plan Y grows upward), Z up from the floor.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planvec/config.hpp"
#include "planvec/types.hpp"

namespace planvec::recon {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

struct Opening3D {
  int wall_id = 0;
  OpeningKind kind = OpeningKind::door;
  double along_offset_m = 0.0;  // from the wall start along its axis
  double width_m = 0.0;
  double sill_m = 0.0;
  double height_m = 0.0;

  bool operator==(const Opening3D&) const = default;
};

/// A wall prism. The footprint is ordered start, start + length * axis,
/// start + length * axis + thickness * normal, start + thickness * normal,
/// so openings are measured along footprint[0] -> footprint[1].
struct SceneWall {
  int id = 0;
  std::array<Vec2, 4> footprint;
  double height_m = 0.0;
  std::vector<Opening3D> openings;

  double length_m() const;
  double thickness_m() const;
  bool operator==(const SceneWall&) const = default;
};

struct Scene3D {
  std::string unit = "m";
  double scale_m_per_px = 0.02;
  std::vector<SceneWall> walls;

  bool operator==(const Scene3D&) const = default;
};

struct OpeningMatch {
  std::size_t symbol_index = 0;
  int wall_id = 0;
};

struct MatchResult {
  std::vector<OpeningMatch> matched;
  std::vector<std::size_t> unmatched;
};

/// Assign each symbol to the wall whose rasterization covers the most
/// pixels of the symbol box (ties to the smaller wall id).
MatchResult match_openings(std::span<const WallBox> walls, std::span<const OpeningSymbol> symbols);

/// Raised when a symbol cannot be placed in its wall.
class OpeningRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Project a matched symbol onto its wall's long axis and size it in meters.
Opening3D fit_opening(const OpeningSymbol& symbol, const WallBox& wall, const PipelineConfig& cfg);

/// Wall length in meters as seen by build_scene.
double wall_length_m(const WallBox& wall, const PipelineConfig& cfg);

/// Extrude walls and attach openings (overlapping openings on one wall are merged).
Scene3D build_scene(std::span<const WallBox> walls, std::span<const Opening3D> openings,
                    const PipelineConfig& cfg);

struct Reconstruction {
  Scene3D scene;
  std::vector<std::size_t> unmatched_symbols;
  std::vector<std::string> diagnostics;
};

/// match_openings + fit_opening + build_scene.
Reconstruction reconstruct(std::span<const WallBox> walls, std::span<const OpeningSymbol> symbols,
                           const PipelineConfig& cfg);

// --- export -----------------------------------------------------------------

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based, outward winding
};

/// Closed triangle mesh of one wall with rectangular through-holes.
Mesh wall_mesh(const SceneWall& wall);

/// ASCII OBJ of all walls (ordered by id) with a comment header.
std::string export_obj(const Scene3D& scene, std::string_view config_hash = {});

/// Semantic JSON: {unit, scale, walls:[{id, footprint, height, openings:[...]}]}.
std::string export_semantic_json(const Scene3D& scene);

class SceneFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scene3D import_semantic_json(std::string_view text);

}  // namespace planvec::recon

#pragma once

// Input/output around the pipeline: image and JSON codecs, evaluation
// metrics, SVG rendering and the synthetic plan generator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "planvec/extraction.hpp"
#include "planvec/raster.hpp"
#include "planvec/types.hpp"

namespace planvec::planio {

// --- images -----------------------------------------------------------------

enum class ImageFormat { pgm, png };

/// Malformed image data. `offset` is the byte position where decoding failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed image in a variant this reader does not handle (e.g. 16 bit).
class UnsupportedFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decode an 8-bit PGM (P5) or PNG. A pixel is foreground iff its
/// luminance is above 127; alpha is ignored.
raster::BinaryMask load_mask(std::span<const std::uint8_t> bytes, ImageFormat format);
/// Format from the magic bytes; anything else is a ParseError at offset 0.
raster::BinaryMask load_mask(std::span<const std::uint8_t> bytes);

/// Binary PGM with foreground 255 and background 0.
std::vector<std::uint8_t> save_pgm(const raster::BinaryMask& mask);

// --- symbols and plans ----------------------------------------------------------

/// Schema violation in a JSON document. `index` names the offending array
/// element when there is one.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::optional<std::size_t> index = std::nullopt);
  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// JSON array of {kind, x, y, w, h, confidence?}.
std::vector<OpeningSymbol> load_symbols(std::string_view text);
std::string symbols_to_json(std::span<const OpeningSymbol> symbols);

struct PlanVectorization {
  int source_width = 0;
  int source_height = 0;
  std::vector<WallBox> walls;
  std::vector<OpeningSymbol> symbols;
  std::vector<std::string> diagnostics;

  bool operator==(const PlanVectorization&) const = default;
};

std::string plan_to_json(const PlanVectorization& plan);
PlanVectorization plan_from_json(std::string_view text);

using extraction::rasterize_walls;

// --- metrics ----------------------------------------------------------------

/// |pred & gt| / |pred | gt|, 1.0 when both are empty.
/// Throws std::invalid_argument on a size mismatch.
double mean_iou(const raster::BinaryMask& pred, const raster::BinaryMask& gt);

template <class Image>
struct Cropped {
  Image image;
  raster::BinaryMask gt;
  raster::PixelRect rect;         // region kept, in the input frame
  std::optional<std::string> diagnostic;
};

/// Crop both inputs to gt's foreground bounding box padded by 2 px and
/// clamped to the canvas. An empty gt leaves both unchanged.
Cropped<raster::BinaryMask> crop_to_extent(const raster::BinaryMask& image, const raster::BinaryMask& gt);
Cropped<raster::GrayImage> crop_to_extent(const raster::GrayImage& image, const raster::BinaryMask& gt);

struct MetricsReport {
  std::optional<double> mask_iou;
  std::optional<double> vectorized_iou;
  std::optional<int> wall_count;
};

/// Present fields only, in the order mask_iou, vectorized_iou, wall_count.
std::string metrics_to_json(const MetricsReport& report);

// --- rendering --------------------------------------------------------------

/// SVG 1.1: walls (green) by id, then symbol boxes in input order
/// (doors blue, windows red).
std::string emit_svg(const PlanVectorization& plan);

// --- synthetic plans -----------------------------------------------------------

struct SynthSpec {
  std::uint64_t seed = 1;
  int canvas_width = 256;
  int canvas_height = 256;
  int n_rect_walls = 8;
  int wall_thickness_min_px = 5;
  int wall_thickness_max_px = 9;
  std::optional<double> inclined_wing_deg;
  double noise_speckle_density = 0.005;
  double hole_density = 0.005;
  int n_doors = 2;
  int n_windows = 2;

  /// Throws SynthError on out-of-range fields.
  void validate() const;
  bool operator==(const SynthSpec&) const = default;
};

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SynthPlan {
  raster::BinaryMask mask;        // degraded
  raster::BinaryMask clean_mask;  // rasterization of the truth walls
  std::vector<WallBox> truth_walls;
  std::vector<OpeningSymbol> truth_symbols;
  std::vector<int> wing_wall_ids;  // truth walls belonging to the inclined wing
};

/// Deterministic for a given SynthSpec. Throws SynthError when the walls do not fit.
SynthPlan synth_plan(const SynthSpec& spec);

/// Spec fields from a JSON object; absent fields keep their defaults,
/// unknown fields are rejected. The result is validated.
SynthSpec synth_spec_from_json(std::string_view text);

}  // namespace planvec::planio

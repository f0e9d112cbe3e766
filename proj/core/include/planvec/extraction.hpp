#pragma once

#include <cstddef>
#include <vector>

#include "planvec/config.hpp"
#include "planvec/raster.hpp"
#include "planvec/types.hpp"

namespace planvec::extraction {

/// A family of wall directions {a, a+90, a+180, a+270}, a in [0, 90).
struct AngleClass {
  double angle_deg = 0.0;
  double weight = 0.0;  // accumulated Hough votes
};

/// Opening, Gaussian blur + re-threshold, then closing.
raster::BinaryMask preprocess(const raster::BinaryMask& mask, const PipelineConfig& cfg);

/// Dominant wall directions, strongest first. Empty for an empty mask; a
/// single 0-degree class when the mask has pixels but no Hough peaks.
std::vector<AngleClass> detect_angles(const raster::BinaryMask& mask, const PipelineConfig& cfg);

struct HvMasks {
  raster::BinaryMask horizontal;
  raster::BinaryMask vertical;
};

/// Openings with a 1-pixel-thick line element in each axis direction.
HvMasks decompose_hv(const raster::BinaryMask& mask, const PipelineConfig& cfg);

/// True iff the contour's minimum-area rectangle is within tol_deg of the axes.
bool validate_tilt(const raster::Contour& contour, double tol_deg);

struct IterationInfo {
  double angle_deg = 0.0;
  std::size_t remaining_before = 0;
  std::size_t remaining_after = 0;
  std::size_t boxes_accepted = 0;
  std::size_t components_deferred = 0;  // rejected by the tilt check
};

struct ExtractionReport {
  raster::BinaryMask preprocessed;
  std::vector<IterationInfo> iterations;
};

/// Full wall vectorization of a binary wall mask.
std::vector<WallBox> extract_walls(const raster::BinaryMask& mask, const PipelineConfig& cfg,
                                   ExtractionReport* report = nullptr);

/// Union of the walls rasterized by pixel-center inclusion, clipped to the canvas.
raster::BinaryMask rasterize_walls(std::span<const WallBox> walls, int width, int height);
raster::BinaryMask rasterize_wall(const WallBox& wall, int width, int height);

}  // namespace planvec::extraction

#pragma once

// Rectangle fitting for wall components.
//
// A component is approximated by an axis-aligned box found greedily: start
// from its bounding box and repeatedly move one side inward by a pixel,
// keeping the move that raises box/wall IoU the most. Parts of the wall left
// outside the box are fitted again as separate chunks. Boxes produced for
// neighbouring components are then made interior-disjoint by trimming.

#include <cstdint>
#include <span>
#include <vector>

#include "planvec/config.hpp"
#include "planvec/raster.hpp"

namespace planvec::boxfit {

/// Foreground pixels of a (cropped) component placed at `offset` in its frame.
struct Region {
  raster::BinaryMask mask;
  raster::Point offset;
};

/// Axis-aligned box in frame pixel-area coordinates.
struct FitBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double achieved_iou = 0.0;

  double area() const { return w * h; }
  bool operator==(const FitBox&) const = default;
};

/// |box & wall| / |box | wall| with the box rasterized by pixel-center
/// inclusion. Throws std::invalid_argument for a box without positive area.
double region_box_iou(const Region& region, const FitBox& box);

/// One run of the greedy shrink loop, with its history.
struct ShrinkResult {
  FitBox box;
  FitBox initial;
  std::vector<double> adopted_iou;  // IoU of the initial box, then of each adopted step
  int iterations = 0;               // adopted steps
  bool too_small = false;           // the initial box already violates min_box_side_px
};

/// Greedy shrinking of the region's bounding box (no chunk recursion).
ShrinkResult shrink_box(const Region& region, const PipelineConfig& cfg);

/// Fit the region with one box, then recursively fit every residual
/// 8-connected chunk of at least min_chunk_area_px pixels.
std::vector<FitBox> shrink_fit(const Region& region, const PipelineConfig& cfg);

/// One trim or removal applied while resolving overlaps.
struct OverlapEvent {
  enum class Action { drop_contained, trim, remove_too_small };
  Action action = Action::trim;
  int changed = -1;    // input index of the box that was trimmed/removed
  int other = -1;      // input index of the box it overlapped
  FitBox before_changed;
  FitBox before_other;
  FitBox after;        // state of `changed` after the trim (unused for removals)
  std::int64_t loss = 0;           // wall pixels removed from `changed`
  std::int64_t alternative_loss = 0;  // best loss had `other` been trimmed instead
};

struct OverlapReport {
  std::vector<OverlapEvent> events;
  std::int64_t total_loss = 0;
};

/// Make the boxes pairwise interior-disjoint. A box contained in another is
/// dropped; partial overlaps are removed by the one-sided trim that loses
/// the fewest wall pixels. Boxes keep their input order.
std::vector<FitBox> resolve_overlaps(std::span<const FitBox> boxes,
                                     std::span<const Region> regions, int min_box_side_px,
                                     OverlapReport* report = nullptr);

/// Interior intersection area of two boxes (0 when they only touch).
double intersection_area(const FitBox& a, const FitBox& b);
/// Pixel rectangle of a box under pixel-center inclusion.
raster::PixelRect pixel_rect(const FitBox& box);

}  // namespace planvec::boxfit

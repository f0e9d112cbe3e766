#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace planvec {

/// Every tunable of the vectorization and reconstruction pipeline.
/// Lengths are pixels unless suffixed `_m` (meters).
struct PipelineConfig {
  int open_kernel_px = 3;
  int close_kernel_px = 5;
  double blur_sigma = 1.0;
  double blur_threshold = 0.5;
  double canny_low = 50.0;
  double canny_high = 150.0;
  double hough_theta_res_deg = 1.0;
  double hough_rho_res_px = 1.0;
  double hough_min_votes_frac = 0.05;  // of the larger image dimension
  double angle_peak_min_frac = 0.1;    // of the strongest angle class
  double angle_merge_tol_deg = 2.0;
  int hv_kernel_len_px = 11;
  int hv_kernel_thickness_px = 1;
  double tilt_tol_deg = 3.0;
  double shrink_iou_target = 0.9;
  int min_box_side_px = 3;
  int min_chunk_area_px = 25;
  int max_angle_iterations = 4;
  double pixel_scale_m_per_px = 0.02;
  double wall_height_m = 2.5;
  double door_height_m = 2.0;
  double window_sill_m = 0.9;
  double window_height_m = 1.2;

  /// Throws ConfigError when a field is out of range.
  void validate() const;

  bool operator==(const PipelineConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse a JSON object. Absent fields keep their defaults; unknown fields
/// and type mismatches raise ConfigError. The result is validated.
PipelineConfig config_from_json(std::string_view text);

/// Canonical JSON (fixed key order, compact).
std::string config_to_json(const PipelineConfig& cfg);

/// 16 hex digits of FNV-1a over the canonical JSON.
std::string config_hash(const PipelineConfig& cfg);

}  // namespace planvec

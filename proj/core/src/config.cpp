#include "planvec/config.hpp"

#include <cstdint>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace planvec {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Fn>
void for_each_field(PipelineConfig& c, Fn&& fn) {
  fn("open_kernel_px", c.open_kernel_px);
  fn("close_kernel_px", c.close_kernel_px);
  fn("blur_sigma", c.blur_sigma);
  fn("blur_threshold", c.blur_threshold);
  fn("canny_low", c.canny_low);
  fn("canny_high", c.canny_high);
  fn("hough_theta_res_deg", c.hough_theta_res_deg);
  fn("hough_rho_res_px", c.hough_rho_res_px);
  fn("hough_min_votes_frac", c.hough_min_votes_frac);
  fn("angle_peak_min_frac", c.angle_peak_min_frac);
  fn("angle_merge_tol_deg", c.angle_merge_tol_deg);
  fn("hv_kernel_len_px", c.hv_kernel_len_px);
  fn("hv_kernel_thickness_px", c.hv_kernel_thickness_px);
  fn("tilt_tol_deg", c.tilt_tol_deg);
  fn("shrink_iou_target", c.shrink_iou_target);
  fn("min_box_side_px", c.min_box_side_px);
  fn("min_chunk_area_px", c.min_chunk_area_px);
  fn("max_angle_iterations", c.max_angle_iterations);
  fn("pixel_scale_m_per_px", c.pixel_scale_m_per_px);
  fn("wall_height_m", c.wall_height_m);
  fn("door_height_m", c.door_height_m);
  fn("window_sill_m", c.window_sill_m);
  fn("window_height_m", c.window_height_m);
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid config: ") + what);
}

bool is_fraction(double v) { return v > 0.0 && v <= 1.0; }

}  // namespace

void PipelineConfig::validate() const {
  require(open_kernel_px > 0, "open_kernel_px must be > 0");
  require(close_kernel_px > 0, "close_kernel_px must be > 0");
  require(open_kernel_px % 2 == 1 && close_kernel_px % 2 == 1, "morphology kernels must be odd");
  require(blur_sigma >= 0.0, "blur_sigma must be >= 0");
  require(blur_threshold > 0.0 && blur_threshold < 1.0, "blur_threshold must lie in (0, 1)");
  require(canny_low >= 0.0 && canny_low <= canny_high, "need 0 <= canny_low <= canny_high");
  require(hough_theta_res_deg > 0.0, "hough_theta_res_deg must be > 0");
  require(hough_rho_res_px > 0.0, "hough_rho_res_px must be > 0");
  require(is_fraction(hough_min_votes_frac), "hough_min_votes_frac must lie in (0, 1]");
  require(is_fraction(angle_peak_min_frac), "angle_peak_min_frac must lie in (0, 1]");
  require(angle_merge_tol_deg > 0.0, "angle_merge_tol_deg must be > 0");
  require(hv_kernel_len_px > 0 && hv_kernel_len_px % 2 == 1, "hv_kernel_len_px must be odd and > 0");
  require(hv_kernel_thickness_px > 0 && hv_kernel_thickness_px % 2 == 1,
          "hv_kernel_thickness_px must be odd and > 0");
  require(tilt_tol_deg > 0.0 && tilt_tol_deg < 45.0, "tilt_tol_deg must lie in (0, 45)");
  require(is_fraction(shrink_iou_target), "shrink_iou_target must lie in (0, 1]");
  require(min_box_side_px > 0, "min_box_side_px must be > 0");
  require(min_chunk_area_px > 0, "min_chunk_area_px must be > 0");
  require(max_angle_iterations > 0, "max_angle_iterations must be > 0");
  require(pixel_scale_m_per_px > 0.0, "pixel_scale_m_per_px must be > 0");
  require(wall_height_m > 0.0, "wall_height_m must be > 0");
  require(door_height_m > 0.0 && door_height_m <= wall_height_m, "door_height_m must lie in (0, wall_height_m]");
  require(window_sill_m > 0.0 && window_height_m > 0.0, "window dimensions must be > 0");
  require(window_sill_m + window_height_m <= wall_height_m, "window must fit under wall_height_m");
}

PipelineConfig config_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig cfg;
  std::set<std::string> known;
  for_each_field(cfg, [&](const char* name, auto& field) {
    known.insert(name);
    auto it = doc.find(name);
    if (it == doc.end()) return;
    using T = std::remove_reference_t<decltype(field)>;
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw ConfigError(std::string("config field '") + name + "' must be an integer");
    } else {
      if (!it->is_number()) throw ConfigError(std::string("config field '") + name + "' must be a number");
    }
    field = it->template get<T>();
  });
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown config field '" + it.key() + "'");
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const PipelineConfig& cfg) {
  ordered_json doc = ordered_json::object();
  PipelineConfig copy = cfg;
  for_each_field(copy, [&](const char* name, auto& field) { doc[name] = field; });
  return doc.dump();
}

std::string config_hash(const PipelineConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace planvec

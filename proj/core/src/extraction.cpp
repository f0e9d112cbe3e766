#include "planvec/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "planvec/boxfit.hpp"

namespace planvec::extraction {

using raster::BinaryMask;
using raster::Kernel;
using raster::PixelRect;
using raster::PointF;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFallbackWeight = 1e-6;

double fold90(double deg) {
  double a = std::fmod(deg, 90.0);
  if (a < 0) a += 90.0;
  if (a >= 90.0 - 1e-9) a = 0.0;
  return a;
}

// Distance between two direction families (period 90 degrees).
double family_distance(double a, double b) {
  const double d = std::abs(fold90(a) - fold90(b));
  return std::min(d, 90.0 - d);
}

// Projection sharpness of the edge pixels for the direction family at
// `deg`: edges are binned by their offset along both family normals and the
// squared bin counts are summed. Aligned lines pile into few bins.
double sharpness(std::span<const raster::Point> edges, double deg) {
  const auto [c, s] = raster::cos_sin_deg(deg);
  double total = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<long> bins;
    bins.reserve(edges.size());
    for (const auto& p : edges) {
      const double rho = axis == 0 ? c * p.x + s * p.y : -s * p.x + c * p.y;
      bins.push_back(std::lround(rho * 4.0));  // quarter-pixel bins
    }
    std::sort(bins.begin(), bins.end());
    for (std::size_t i = 0; i < bins.size();) {
      std::size_t j = i;
      while (j < bins.size() && bins[j] == bins[i]) ++j;
      total += static_cast<double>(j - i) * static_cast<double>(j - i);
      i = j;
    }
  }
  return total;
}

// Sub-bin estimate: the sharpest angle on a res/10 grid within one bin of
// the vote-weighted mean. Ties go to the candidate nearest the mean.
double refine_angle(std::span<const raster::Point> edges, double mean, double res) {
  const double step = res / 10.0;
  const long lo = static_cast<long>(std::ceil((mean - res) / step - 1e-9));
  const long hi = static_cast<long>(std::floor((mean + res) / step + 1e-9));
  double best = mean, best_score = -1.0;
  for (long k = lo; k <= hi; ++k) {
    const double a = k * step;
    const double score = sharpness(edges, a);
    if (score > best_score || (score == best_score && std::abs(a - mean) < std::abs(best - mean))) {
      best = a;
      best_score = score;
    }
  }
  return best;
}

struct Line {
  double theta_deg = 0.0;
  int votes = 0;
};

// Greedy line extraction: take the strongest accumulator cell, withdraw the
// votes of the edge pixels within one rho bin of it, repeat while a cell
// keeps min_votes. Each edge pixel supports at most one line, so crossings
// and the ridges beside a strong line do not add phantom directions.
std::vector<Line> extract_lines(std::span<const raster::Point> edges, int width, int height, double theta_res,
                                double rho_res, int min_votes) {
  const int tbins = std::max(1, static_cast<int>(std::ceil(180.0 / theta_res - 1e-9)));
  const int offset = static_cast<int>(std::ceil(std::hypot(double(width), double(height)) / rho_res));
  const int rbins = 2 * offset + 1;
  std::vector<double> cs(tbins), sn(tbins);
  for (int t = 0; t < tbins; ++t) {
    const double rad = t * theta_res * kPi / 180.0;
    cs[t] = std::cos(rad);
    sn[t] = std::sin(rad);
  }
  auto bin = [&](const raster::Point& p, int t) {
    return static_cast<int>(std::lround((p.x * cs[t] + p.y * sn[t]) / rho_res)) + offset;
  };
  std::vector<int> acc(static_cast<std::size_t>(tbins) * rbins, 0);
  auto vote = [&](const raster::Point& p, int delta) {
    for (int t = 0; t < tbins; ++t) acc[static_cast<std::size_t>(t) * rbins + bin(p, t)] += delta;
  };
  for (const auto& p : edges) vote(p, 1);

  std::vector<bool> alive(edges.size(), true);
  std::vector<Line> lines;
  for (;;) {
    const auto it = std::max_element(acc.begin(), acc.end());
    if (it == acc.end() || *it < std::max(1, min_votes)) break;
    const auto cell = static_cast<std::size_t>(it - acc.begin());
    const int t = static_cast<int>(cell / rbins), r = static_cast<int>(cell % rbins);
    lines.push_back({t * theta_res, *it});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive[i] || std::abs(bin(edges[i], t) - r) > 1) continue;
      alive[i] = false;
      vote(edges[i], -1);
    }
  }
  return lines;
}

}  // namespace

BinaryMask preprocess(const BinaryMask& mask, const PipelineConfig& cfg) {
  BinaryMask out = raster::open(mask, Kernel::square(cfg.open_kernel_px));
  out = raster::blur_threshold(out, cfg.blur_sigma, cfg.blur_threshold);
  return raster::close(out, Kernel::square(cfg.close_kernel_px));
}

std::vector<AngleClass> detect_angles(const BinaryMask& mask, const PipelineConfig& cfg) {
  if (!mask.any()) return {};
  const BinaryMask edges = raster::canny(raster::to_gray(mask), cfg.canny_low, cfg.canny_high);
  const int longest = std::max(mask.width(), mask.height());
  const int min_votes = std::max(1, static_cast<int>(std::ceil(cfg.hough_min_votes_frac * longest)));
  std::vector<raster::Point> edge_points;
  for (int y = 0; y < edges.height(); ++y) {
    for (int x = 0; x < edges.width(); ++x) {
      if (edges.at(x, y)) edge_points.push_back({x, y});
    }
  }
  const auto lines = extract_lines(edge_points, edges.width(), edges.height(), cfg.hough_theta_res_deg,
                                   cfg.hough_rho_res_px, min_votes);
  if (lines.empty()) return {AngleClass{0.0, kFallbackWeight}};

  const double res = cfg.hough_theta_res_deg;
  const int bins = std::max(1, static_cast<int>(std::lround(90.0 / res)));
  std::vector<double> weight(bins, 0.0);
  for (const auto& l : lines) {
    const int idx = static_cast<int>(std::lround(fold90(l.theta_deg) / res)) % bins;
    weight[idx] += l.votes;
  }

  std::vector<int> order(bins);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });

  std::vector<bool> used(bins, false);
  std::vector<AngleClass> classes;
  for (int seed : order) {
    if (used[seed] || weight[seed] <= 0.0) continue;
    const double seed_angle = seed * res;
    // Vote-weighted circular mean on the 90-degree period (angles scaled by 4).
    double sx = 0.0, sy = 0.0, total = 0.0;
    for (int b = 0; b < bins; ++b) {
      if (used[b] || weight[b] <= 0.0) continue;
      if (family_distance(b * res, seed_angle) >= cfg.angle_merge_tol_deg) continue;
      used[b] = true;
      const double rad = 4.0 * b * res * kPi / 180.0;
      sx += weight[b] * std::cos(rad);
      sy += weight[b] * std::sin(rad);
      total += weight[b];
    }
    double mean = std::atan2(sy, sx) * 180.0 / kPi / 4.0;
    mean = fold90(refine_angle(edge_points, mean, res));
    classes.push_back({std::abs(mean) < 1e-9 ? 0.0 : mean, total});
  }

  const double strongest = classes.empty() ? 0.0 : classes.front().weight;
  std::erase_if(classes, [&](const AngleClass& c) { return c.weight < cfg.angle_peak_min_frac * strongest; });
  std::stable_sort(classes.begin(), classes.end(), [](const AngleClass& a, const AngleClass& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.angle_deg < b.angle_deg;
  });
  return classes;
}

HvMasks decompose_hv(const BinaryMask& mask, const PipelineConfig& cfg) {
  const Kernel horizontal(cfg.hv_kernel_len_px, cfg.hv_kernel_thickness_px);
  const Kernel vertical(cfg.hv_kernel_thickness_px, cfg.hv_kernel_len_px);
  return {raster::open(mask, horizontal), raster::open(mask, vertical)};
}

bool validate_tilt(const raster::Contour& contour, double tol_deg) {
  if (contour.empty()) throw std::invalid_argument("validate_tilt: empty contour");
  const auto rect = raster::min_area_rect(std::span<const raster::Point>(contour));
  return rect.angle_deg <= tol_deg || rect.angle_deg >= 90.0 - tol_deg;
}

BinaryMask rasterize_wall(const WallBox& wall, int width, int height) {
  BinaryMask out(width, height);
  const PixelRect b = wall.pixel_bounds();
  const int x0 = std::max(b.x, 0), x1 = std::min(b.right(), width);
  const int y0 = std::max(b.y, 0), y1 = std::min(b.bottom(), height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (wall.covers_pixel(x, y)) out.set(x, y);
    }
  }
  return out;
}

BinaryMask rasterize_walls(std::span<const WallBox> walls, int width, int height) {
  BinaryMask out(width, height);
  for (const auto& wall : walls) {
    const PixelRect b = wall.pixel_bounds();
    const int x0 = std::max(b.x, 0), x1 = std::min(b.right(), width);
    const int y0 = std::max(b.y, 0), y1 = std::min(b.bottom(), height);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        if (wall.covers_pixel(x, y)) out.set(x, y);
      }
    }
  }
  return out;
}

namespace {

// Boxes fitted in one rotated frame, kept in rotated-image coordinates
// until overlap resolution is done.
struct FrameResult {
  double angle_deg = 0.0;
  PointF origin;  // rotated-image position of the frame origin
  BinaryMask wall;
  std::vector<boxfit::FitBox> boxes;
};

WallBox to_wall(const boxfit::FitBox& b, const FrameResult& frame) {
  WallBox w;
  w.frame_angle_deg = frame.angle_deg;
  w.x = b.x - frame.origin.x;
  w.y = b.y - frame.origin.y;
  w.w = b.w;
  w.h = b.h;
  return w;
}

// Pixel set of a wall restricted to its bounds, for cross-frame checks.
struct WallPixels {
  PixelRect bounds;
  BinaryMask mask;
  std::size_t count = 0;
};

WallPixels wall_pixels(const WallBox& wall, int width, int height) {
  WallPixels p;
  PixelRect b = wall.pixel_bounds();
  const int x0 = std::max(b.x, 0), x1 = std::min(b.right(), width);
  const int y0 = std::max(b.y, 0), y1 = std::min(b.bottom(), height);
  p.bounds = {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
  p.mask = BinaryMask(p.bounds.width, p.bounds.height);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (wall.covers_pixel(x, y)) {
        p.mask.set(x - x0, y - y0);
        ++p.count;
      }
    }
  }
  return p;
}

bool pixels_within(const WallPixels& inner, const WallPixels& outer) {
  for (int y = 0; y < inner.bounds.height; ++y) {
    for (int x = 0; x < inner.bounds.width; ++x) {
      if (!inner.mask.at(x, y)) continue;
      const int ox = inner.bounds.x + x - outer.bounds.x;
      const int oy = inner.bounds.y + y - outer.bounds.y;
      if (!outer.mask.at_or(ox, oy, false)) return false;
    }
  }
  return true;
}

// Sub-pixel edge placement. For each side the fill of the box's border row
// (f_in) and of the row just outside (f_out) is measured in the frame's
// wall mask; a straight edge crossing the two rows sits f_in + f_out into
// them, so the side moves by f_in + f_out - 1. Pixels of the frame's other
// boxes do not count as outside fill. Solid rectangles are left unchanged.
void refine_edges(std::vector<boxfit::FitBox>& boxes, const BinaryMask& wall) {
  BinaryMask claimed(wall.width(), wall.height());
  std::vector<PixelRect> rects;
  for (const auto& b : boxes) {
    rects.push_back(boxfit::pixel_rect(b));
    claimed.fill_rect(rects.back());
  }
  auto fill = [&](int x0, int y0, int dx, int dy, int n, bool outside) {
    int hits = 0;
    for (int k = 0; k < n; ++k) {
      const int x = x0 + k * dx, y = y0 + k * dy;
      if (!wall.at_or(x, y, false)) continue;
      if (outside && claimed.at_or(x, y, false)) continue;
      ++hits;
    }
    return n > 0 ? static_cast<double>(hits) / n : 0.0;
  };
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const PixelRect r = rects[i];
    if (r.empty()) continue;
    const double top = fill(r.x, r.y, 1, 0, r.width, false) + fill(r.x, r.y - 1, 1, 0, r.width, true) - 1.0;
    const double bottom =
        fill(r.x, r.bottom() - 1, 1, 0, r.width, false) + fill(r.x, r.bottom(), 1, 0, r.width, true) - 1.0;
    const double left = fill(r.x, r.y, 0, 1, r.height, false) + fill(r.x - 1, r.y, 0, 1, r.height, true) - 1.0;
    const double right =
        fill(r.right() - 1, r.y, 0, 1, r.height, false) + fill(r.right(), r.y, 0, 1, r.height, true) - 1.0;
    auto& b = boxes[i];
    b.x -= left;
    b.w += left + right;
    b.y -= top;
    b.h += top + bottom;
  }
}

// Pixels of `comp` plus the `leftover` pixels 8-connected to it inside its
// bounding box grown by `reach`. Leftover pixels are wall that neither
// directional mask kept, i.e. material of walls at other angles.
std::vector<raster::Point> with_attached_leftover(const raster::Component& comp, const BinaryMask& leftover,
                                                  int reach) {
  const PixelRect& b = comp.bbox;
  const int x0 = std::max(0, b.x - reach), y0 = std::max(0, b.y - reach);
  const int x1 = std::min(leftover.width(), b.right() + reach);
  const int y1 = std::min(leftover.height(), b.bottom() + reach);
  BinaryMask seen(x1 - x0, y1 - y0);
  std::vector<raster::Point> out, stack;
  for (int y = 0; y < b.height; ++y) {
    for (int x = 0; x < b.width; ++x) {
      if (!comp.mask.at(x, y)) continue;
      const raster::Point p{b.x + x, b.y + y};
      seen.set(p.x - x0, p.y - y0);
      out.push_back(p);
      stack.push_back(p);
    }
  }
  while (!stack.empty()) {
    const raster::Point p = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = p.x + dx, y = p.y + dy;
        if (x < x0 || y < y0 || x >= x1 || y >= y1) continue;
        if (seen.at(x - x0, y - y0) || !leftover.at(x, y)) continue;
        seen.set(x - x0, y - y0);
        out.push_back({x, y});
        stack.push_back({x, y});
      }
    }
  }
  return out;
}

// Both long edges drift the same way across many cross-sections, as the
// strip of an inclined wall does. Resampling jaggies cancel out and a jog
// between two offset collinear walls counts once.
bool is_sheared(const BinaryMask& m, double tol_deg) {
  const bool along_x = m.width() >= m.height();
  const int lines = along_x ? m.width() : m.height();
  const int span = along_x ? m.height() : m.width();
  int lo_drift = 0, hi_drift = 0, prev_lo = -1, prev_hi = -1;
  for (int i = 0; i < lines; ++i) {
    int lo = -1, hi = -1;
    for (int j = 0; j < span; ++j) {
      if (!(along_x ? m.at(i, j) : m.at(j, i))) continue;
      if (lo < 0) lo = j;
      hi = j;
    }
    if (lo < 0) continue;
    if (prev_lo >= 0) {
      lo_drift += (lo > prev_lo) - (lo < prev_lo);
      hi_drift += (hi > prev_hi) - (hi < prev_hi);
    }
    prev_lo = lo;
    prev_hi = hi;
  }
  const double need = std::max(3.0, lines * std::tan(tol_deg * kPi / 180.0));
  return std::abs(lo_drift) >= need && std::abs(hi_drift) >= need && (lo_drift > 0) == (hi_drift > 0);
}

// An axis-aligned-looking piece that mostly joins material the directional
// openings dropped, e.g. the corner where two thin walls of an inclined room
// meet. Such a piece belongs to a later angle iteration.
bool is_inclined_fragment(const raster::Component& comp, const BinaryMask& leftover, const PipelineConfig& cfg) {
  if (is_sheared(comp.mask, cfg.tilt_tol_deg)) return true;
  const auto grown = with_attached_leftover(comp, leftover, cfg.hv_kernel_len_px);
  return grown.size() - comp.area > comp.area;
}

// IoU of the union of boxes against the region.
double coverage(const boxfit::Region& region, std::span<const boxfit::FitBox> boxes) {
  BinaryMask drawn(region.mask.width(), region.mask.height());
  for (const auto& b : boxes) {
    const auto r = boxfit::pixel_rect(b);
    drawn.fill_rect({r.x - region.offset.x, r.y - region.offset.y, r.width, r.height});
  }
  const std::size_t inter = raster::count_and(drawn, region.mask);
  const std::size_t uni = drawn.count() + region.mask.count() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Cut the region across its long axis wherever an edge of the cross-section
// jumps by 2 px or more (walls of different offset or thickness meeting
// end to end).
std::vector<boxfit::Region> split_at_jogs(const boxfit::Region& region) {
  const BinaryMask& m = region.mask;
  const bool along_x = m.width() >= m.height();
  const int lines = along_x ? m.width() : m.height();
  const int span = along_x ? m.height() : m.width();
  std::vector<int> cuts{0};
  int prev_lo = -1, prev_hi = -1;
  for (int i = 0; i < lines; ++i) {
    int lo = -1, hi = -1;
    for (int j = 0; j < span; ++j) {
      if (!(along_x ? m.at(i, j) : m.at(j, i))) continue;
      if (lo < 0) lo = j;
      hi = j;
    }
    if (lo < 0) continue;
    if (prev_lo >= 0 && (std::abs(lo - prev_lo) >= 2 || std::abs(hi - prev_hi) >= 2)) cuts.push_back(i);
    prev_lo = lo;
    prev_hi = hi;
  }
  cuts.push_back(lines);
  std::vector<boxfit::Region> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const raster::PixelRect r = along_x ? raster::PixelRect{cuts[k], 0, cuts[k + 1] - cuts[k], span}
                                        : raster::PixelRect{0, cuts[k], span, cuts[k + 1] - cuts[k]};
    BinaryMask piece = m.crop(r);
    const raster::PixelRect bb = piece.bounding_box();
    if (bb.empty()) continue;
    out.push_back({piece.crop(bb), {region.offset.x + r.x + bb.x, region.offset.y + r.y + bb.y}});
  }
  return out;
}

// shrink_fit, falling back to fitting the pieces between jogs when the
// greedy shrink cannot reach the target on the whole component.
std::vector<boxfit::FitBox> fit_component(const boxfit::Region& region, const PipelineConfig& cfg) {
  auto fits = boxfit::shrink_fit(region, cfg);
  if (!fits.empty() && fits.front().achieved_iou >= cfg.shrink_iou_target) return fits;
  const auto pieces = split_at_jogs(region);
  if (pieces.size() < 2) return fits;
  std::vector<boxfit::FitBox> alt;
  for (const auto& piece : pieces) {
    const auto f = boxfit::shrink_fit(piece, cfg);
    alt.insert(alt.end(), f.begin(), f.end());
  }
  return coverage(region, alt) > coverage(region, fits) ? alt : fits;
}

}  // namespace

std::vector<WallBox> extract_walls(const BinaryMask& mask, const PipelineConfig& cfg,
                                   ExtractionReport* report) {
  cfg.validate();
  const int width = mask.width(), height = mask.height();
  const BinaryMask pre = preprocess(mask, cfg);
  BinaryMask remaining = pre;
  std::vector<FrameResult> frames;
  std::vector<double> processed;
  std::vector<IterationInfo> infos;

  for (int iter = 0; iter < cfg.max_angle_iterations; ++iter) {
    const std::size_t before = remaining.count();
    if (before < static_cast<std::size_t>(cfg.min_chunk_area_px)) break;

    const auto classes = detect_angles(remaining, cfg);
    const AngleClass* pick = nullptr;
    for (const auto& c : classes) {
      const bool seen = std::any_of(processed.begin(), processed.end(), [&](double a) {
        return family_distance(a, c.angle_deg) < cfg.angle_merge_tol_deg;
      });
      if (!seen) {
        pick = &c;
        break;
      }
    }
    if (!pick) break;
    processed.push_back(pick->angle_deg);

    IterationInfo info;
    info.angle_deg = pick->angle_deg;
    info.remaining_before = before;

    auto rot = raster::rotate(remaining, -pick->angle_deg);
    const auto& fwd = rot.map.forward.m;
    FrameResult frame;
    frame.angle_deg = pick->angle_deg;
    // pixel-area origin of the frame: t + (0.5, 0.5) - R (0.5, 0.5)
    frame.origin = {fwd[2] + 0.5 - (fwd[0] * 0.5 + fwd[1] * 0.5),
                    fwd[5] + 0.5 - (fwd[3] * 0.5 + fwd[4] * 0.5)};

    const HvMasks hv = decompose_hv(rot.mask, cfg);
    // Material this frame cannot explain: pixels both openings dropped plus
    // components that fail the tilt check. Pieces mostly attached to it are
    // deferred along with it.
    BinaryMask foreign = raster::mask_subtract(rot.mask, raster::mask_or(hv.horizontal, hv.vertical));
    std::vector<raster::Component> candidates;
    for (const BinaryMask* dir : {&hv.horizontal, &hv.vertical}) {
      for (auto& comp : raster::components(*dir)) {
        if (comp.area < static_cast<std::size_t>(cfg.min_chunk_area_px)) continue;
        if (!validate_tilt(comp.contour, cfg.tilt_tol_deg)) {
          ++info.components_deferred;
          for (int y = 0; y < comp.bbox.height; ++y) {
            for (int x = 0; x < comp.bbox.width; ++x) {
              if (comp.mask.at(x, y)) foreign.set(comp.bbox.x + x, comp.bbox.y + y);
            }
          }
          continue;
        }
        candidates.push_back(std::move(comp));
      }
    }
    for (auto& comp : candidates) {
      if (is_inclined_fragment(comp, foreign, cfg)) {
        ++info.components_deferred;
        continue;
      }
      boxfit::Region region{std::move(comp.mask), {comp.bbox.x, comp.bbox.y}};
      auto fits = fit_component(region, cfg);
      frame.boxes.insert(frame.boxes.end(), fits.begin(), fits.end());
    }
    info.boxes_accepted = frame.boxes.size();

    if (!frame.boxes.empty()) {
      std::vector<WallBox> found;
      for (const auto& b : frame.boxes) found.push_back(to_wall(b, frame));
      remaining = raster::mask_subtract(remaining, rasterize_walls(found, width, height));
      frame.wall = std::move(rot.mask);
      frames.push_back(std::move(frame));
    }
    info.remaining_after = remaining.count();
    infos.push_back(info);
  }

  std::vector<WallBox> walls;
  for (const auto& frame : frames) {
    const boxfit::Region wall_region{frame.wall, {0, 0}};
    auto resolved = boxfit::resolve_overlaps(frame.boxes, std::span(&wall_region, 1),
                                             cfg.min_box_side_px);
    refine_edges(resolved, frame.wall);
    for (const auto& b : resolved) walls.push_back(to_wall(b, frame));
  }

  // Across frames only containment is decidable: drop walls whose pixels lie
  // entirely inside a larger wall of another frame.
  std::vector<WallPixels> pixels;
  pixels.reserve(walls.size());
  for (const auto& w : walls) pixels.push_back(wall_pixels(w, width, height));
  std::vector<bool> keep(walls.size(), true);
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (pixels[i].count == 0) {
      keep[i] = false;
      continue;
    }
    for (std::size_t j = 0; j < walls.size() && keep[i]; ++j) {
      if (i == j || !keep[j] || walls[i].frame_angle_deg == walls[j].frame_angle_deg) continue;
      const bool smaller = pixels[i].count < pixels[j].count ||
                           (pixels[i].count == pixels[j].count && i > j);
      if (smaller && pixels_within(pixels[i], pixels[j])) keep[i] = false;
    }
  }

  std::vector<WallBox> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (!keep[i] || !(walls[i].w > 0.0 && walls[i].h > 0.0)) continue;
    // no hallucinated walls: must touch the preprocessed mask
    bool hits = false;
    const auto& p = pixels[i];
    for (int y = 0; y < p.bounds.height && !hits; ++y) {
      for (int x = 0; x < p.bounds.width; ++x) {
        if (p.mask.at(x, y) && pre.at(p.bounds.x + x, p.bounds.y + y)) {
          hits = true;
          break;
        }
      }
    }
    if (!hits) continue;
    WallBox w = walls[i];
    w.id = static_cast<int>(out.size());
    out.push_back(w);
  }

  if (report) {
    report->preprocessed = pre;
    report->iterations = std::move(infos);
  }
  return out;
}

}  // namespace planvec::extraction

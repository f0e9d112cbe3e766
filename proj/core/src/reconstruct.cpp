#include "planvec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "planvec/boxfit.hpp"

namespace planvec::recon {

namespace {

constexpr double kMinOpeningWidthM = 0.1;
// Openings are kept this far from wall ends and the wall top so every
// jamb and lintel has positive size in the mesh.
constexpr double kMinMarginM = 0.01;

double dist(const Vec2& a, const Vec2& b) { return std::hypot(b.x - a.x, b.y - a.y); }

Vec2 to_metric(const raster::PointF& image_point, double scale) {
  return {image_point.x * scale, -image_point.y * scale};
}

// Frame-space corners ordered start, along the axis, then across.
std::array<raster::PointF, 4> axis_ordered_frame_corners(const WallBox& w) {
  if (w.orientation() == Orientation::horizontal) {
    return {{{w.x, w.y}, {w.x + w.w, w.y}, {w.x + w.w, w.y + w.h}, {w.x, w.y + w.h}}};
  }
  return {{{w.x, w.y}, {w.x, w.y + w.h}, {w.x + w.w, w.y + w.h}, {w.x + w.w, w.y}}};
}

raster::PointF frame_to_image(const WallBox& w, raster::PointF q) {
  const auto [c, s] = raster::cos_sin_deg(w.frame_angle_deg);
  return {c * q.x - s * q.y, s * q.x + c * q.y};
}

}  // namespace

double SceneWall::length_m() const { return dist(footprint[0], footprint[1]); }
double SceneWall::thickness_m() const { return dist(footprint[0], footprint[3]); }

MatchResult match_openings(std::span<const WallBox> walls, std::span<const OpeningSymbol> symbols) {
  MatchResult out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& s = symbols[i];
    const auto [x0, x1] = raster::pixel_span(s.x, s.w);
    const auto [y0, y1] = raster::pixel_span(s.y, s.h);
    std::int64_t best = 0;
    int best_id = 0;
    for (const auto& wall : walls) {
      const raster::PixelRect b = wall.pixel_bounds();
      const int cx0 = std::max(x0, b.x), cx1 = std::min(x1, b.right());
      const int cy0 = std::max(y0, b.y), cy1 = std::min(y1, b.bottom());
      std::int64_t overlap = 0;
      for (int y = cy0; y < cy1; ++y) {
        for (int x = cx0; x < cx1; ++x) overlap += wall.covers_pixel(x, y) ? 1 : 0;
      }
      if (overlap > best || (overlap == best && overlap > 0 && wall.id < best_id)) {
        best = overlap;
        best_id = wall.id;
      }
    }
    if (best > 0) {
      out.matched.push_back({i, best_id});
    } else {
      out.unmatched.push_back(i);
    }
  }
  return out;
}

double wall_length_m(const WallBox& wall, const PipelineConfig& cfg) {
  return wall.length() * cfg.pixel_scale_m_per_px;
}

Opening3D fit_opening(const OpeningSymbol& symbol, const WallBox& wall, const PipelineConfig& cfg) {
  const double scale = cfg.pixel_scale_m_per_px;
  const double length_px = wall.length();
  if (length_px * scale < kMinOpeningWidthM) {
    throw OpeningRejected("wall " + std::to_string(wall.id) + " is shorter than " +
                          std::to_string(kMinOpeningWidthM) + " m");
  }
  const bool horizontal = wall.orientation() == Orientation::horizontal;
  const double start = horizontal ? wall.x : wall.y;

  // Project the symbol box onto the wall axis in the wall's frame.
  const raster::PointF corners[4] = {{symbol.x, symbol.y},
                                     {symbol.x + symbol.w, symbol.y},
                                     {symbol.x + symbol.w, symbol.y + symbol.h},
                                     {symbol.x, symbol.y + symbol.h}};
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < 4; ++i) {
    const raster::PointF q = wall.to_frame(corners[i]);
    const double t = horizontal ? q.x : q.y;
    lo = i == 0 ? t : std::min(lo, t);
    hi = i == 0 ? t : std::max(hi, t);
  }
  const double width_px = std::clamp(hi - lo, kMinOpeningWidthM / scale, length_px);
  const double offset_px = std::clamp(0.5 * (lo + hi) - 0.5 * width_px - start, 0.0, length_px - width_px);

  Opening3D o;
  o.wall_id = wall.id;
  o.kind = symbol.kind;
  o.along_offset_m = offset_px * scale;
  o.width_m = width_px * scale;
  if (symbol.kind == OpeningKind::door) {
    o.sill_m = 0.0;
    o.height_m = std::min(cfg.door_height_m, cfg.wall_height_m);
  } else {
    o.sill_m = cfg.window_sill_m;
    o.height_m = std::min(cfg.window_height_m, cfg.wall_height_m - cfg.window_sill_m);
  }
  return o;
}

namespace {

struct Interval {
  double a, b, bottom, top;
  bool door;
};

std::vector<Opening3D> merge_openings(int wall_id, std::vector<Opening3D> ops, double length_m,
                                      double height_m) {
  std::sort(ops.begin(), ops.end(), [](const Opening3D& p, const Opening3D& q) {
    return p.along_offset_m < q.along_offset_m;
  });
  std::vector<Interval> merged;
  for (const auto& o : ops) {
    Interval cur{o.along_offset_m, o.along_offset_m + o.width_m, o.sill_m, o.sill_m + o.height_m,
                 o.kind == OpeningKind::door};
    if (!merged.empty() && cur.a <= merged.back().b) {
      auto& m = merged.back();
      m.b = std::max(m.b, cur.b);
      m.bottom = std::min(m.bottom, cur.bottom);
      m.top = std::max(m.top, cur.top);
      m.door = m.door || cur.door;
    } else {
      merged.push_back(cur);
    }
  }

  std::vector<Opening3D> out;
  for (auto m : merged) {
    m.a = std::max(m.a, kMinMarginM);
    m.b = std::min(m.b, length_m - kMinMarginM);
    m.top = std::min(m.top, height_m - kMinMarginM);
    if (m.bottom < kMinMarginM) m.bottom = 0.0;
    if (m.b - m.a <= 0.0 || m.top - m.bottom <= 0.0) continue;
    Opening3D o;
    o.wall_id = wall_id;
    o.kind = m.door ? OpeningKind::door : OpeningKind::window;
    o.along_offset_m = m.a;
    o.width_m = m.b - m.a;
    o.sill_m = m.bottom;
    o.height_m = m.top - m.bottom;
    out.push_back(o);
  }
  return out;
}

}  // namespace

Scene3D build_scene(std::span<const WallBox> walls, std::span<const Opening3D> openings,
                    const PipelineConfig& cfg) {
  Scene3D scene;
  scene.scale_m_per_px = cfg.pixel_scale_m_per_px;
  std::vector<const WallBox*> ordered;
  for (const auto& w : walls) ordered.push_back(&w);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const WallBox* a, const WallBox* b) { return a->id < b->id; });

  for (const WallBox* w : ordered) {
    SceneWall sw;
    sw.id = w->id;
    sw.height_m = cfg.wall_height_m;
    const auto corners = axis_ordered_frame_corners(*w);
    for (int i = 0; i < 4; ++i) {
      sw.footprint[i] = to_metric(frame_to_image(*w, corners[i]), cfg.pixel_scale_m_per_px);
    }
    std::vector<Opening3D> mine;
    for (const auto& o : openings) {
      if (o.wall_id == w->id) mine.push_back(o);
    }
    sw.openings = merge_openings(w->id, std::move(mine), sw.length_m(), sw.height_m);
    scene.walls.push_back(std::move(sw));
  }
  return scene;
}

Reconstruction reconstruct(std::span<const WallBox> walls, std::span<const OpeningSymbol> symbols,
                           const PipelineConfig& cfg) {
  Reconstruction out;
  const MatchResult match = match_openings(walls, symbols);
  std::map<int, const WallBox*> by_id;
  for (const auto& w : walls) by_id.emplace(w.id, &w);

  std::vector<Opening3D> openings;
  for (const auto& m : match.matched) {
    try {
      openings.push_back(fit_opening(symbols[m.symbol_index], *by_id.at(m.wall_id), cfg));
    } catch (const OpeningRejected& e) {
      out.diagnostics.push_back("symbol " + std::to_string(m.symbol_index) + " rejected: " + e.what());
    }
  }
  for (std::size_t idx : match.unmatched) {
    out.unmatched_symbols.push_back(idx);
    out.diagnostics.push_back("symbol " + std::to_string(idx) + " (" +
                              std::string(to_string(symbols[idx].kind)) + ") overlaps no wall");
  }
  out.scene = build_scene(walls, openings, cfg);
  return out;
}

}  // namespace planvec::recon

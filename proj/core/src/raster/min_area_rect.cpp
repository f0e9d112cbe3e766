#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "planvec/raster.hpp"

namespace planvec::raster {

namespace {

double cross(const PointF& o, const PointF& a, const PointF& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

// Fold a direction into [0, 90), swapping extents when the fold crosses 90.
void normalize(RotatedRect& r) {
  double a = std::fmod(r.angle_deg, 180.0);
  if (a < 0) a += 180.0;
  if (a >= 90.0) {
    a -= 90.0;
    std::swap(r.width, r.height);
  }
  if (a > 90.0 - 1e-9) {
    a = 0.0;
    std::swap(r.width, r.height);
  }
  if (a < 1e-9) a = 0.0;
  r.angle_deg = a;
}

}  // namespace

std::vector<PointF> convex_hull(std::span<const PointF> points) {
  std::vector<PointF> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const PointF& a, const PointF& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<PointF> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

RotatedRect min_area_rect(std::span<const PointF> points) {
  if (points.empty()) throw std::invalid_argument("min_area_rect: no points");
  const auto hull = convex_hull(points);
  RotatedRect best;
  if (hull.size() == 1) {
    best.center = hull[0];
    return best;
  }

  double best_area = std::numeric_limits<double>::infinity();
  const std::size_t edges = hull.size() == 2 ? 1 : hull.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const PointF& a = hull[i];
    const PointF& b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len == 0.0) continue;
    const double ux = (b.x - a.x) / len, uy = (b.y - a.y) / len;
    double min_u = std::numeric_limits<double>::infinity(), max_u = -min_u;
    double min_v = min_u, max_v = -min_u;
    for (const auto& p : hull) {
      const double pu = p.x * ux + p.y * uy;
      const double pv = -p.x * uy + p.y * ux;
      min_u = std::min(min_u, pu);
      max_u = std::max(max_u, pu);
      min_v = std::min(min_v, pv);
      max_v = std::max(max_v, pv);
    }
    const double area = (max_u - min_u) * (max_v - min_v);
    if (area < best_area - 1e-9 * std::max(1.0, area)) {
      best_area = area;
      const double cu = 0.5 * (min_u + max_u), cv = 0.5 * (min_v + max_v);
      best.center = {cu * ux - cv * uy, cu * uy + cv * ux};
      best.width = max_u - min_u;
      best.height = max_v - min_v;
      best.angle_deg = std::atan2(uy, ux) * kRadToDeg;
    }
  }
  normalize(best);
  return best;
}

RotatedRect min_area_rect(std::span<const Point> points) {
  std::vector<PointF> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return min_area_rect(std::span<const PointF>(pts));
}

}  // namespace planvec::raster

#include <algorithm>
#include <cmath>
#include <limits>

#include "planvec/raster.hpp"

namespace planvec::raster {

std::pair<double, double> cos_sin_deg(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0) a += 360.0;
  const double quarter = a / 90.0;
  const double nearest = std::round(quarter);
  if (std::abs(quarter - nearest) < 1e-12) {
    switch (static_cast<int>(nearest) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double rad = a * 3.14159265358979323846 / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

RotationResult rotate(const BinaryMask& mask, double angle_deg) {
  const auto [c, s] = cos_sin_deg(angle_deg);
  const int w = mask.width(), h = mask.height();

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  const double cx[4] = {0.0, w - 1.0, 0.0, w - 1.0};
  const double cy[4] = {0.0, 0.0, h - 1.0, h - 1.0};
  for (int i = 0; i < 4; ++i) {
    const double x = c * cx[i] - s * cy[i];
    const double y = s * cx[i] + c * cy[i];
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }

  RotationResult result;
  if (w == 0 || h == 0) {
    result.mask = BinaryMask(w == 0 ? 0 : h, h == 0 ? 0 : w);
    return result;
  }
  const int out_w = static_cast<int>(std::ceil(max_x - min_x - 1e-9)) + 1;
  const int out_h = static_cast<int>(std::ceil(max_y - min_y - 1e-9)) + 1;
  const double tx = -min_x, ty = -min_y;

  result.map.forward.m = {c, -s, tx, s, c, ty};
  // inverse: R^T (p - t)
  result.map.inverse.m = {c, s, -(c * tx + s * ty), -s, c, -(-s * tx + c * ty)};

  result.mask = BinaryMask(out_w, out_h);
  const Affine2x3& inv = result.map.inverse;
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const PointF src = inv.apply({static_cast<double>(x), static_cast<double>(y)});
      const int sx = static_cast<int>(std::lround(src.x));
      const int sy = static_cast<int>(std::lround(src.y));
      if (mask.at_or(sx, sy, false)) result.mask.set(x, y);
    }
  }
  return result;
}

}  // namespace planvec::raster

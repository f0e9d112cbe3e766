#include <algorithm>
#include <cmath>

#include "planvec/types.hpp"

namespace planvec {

using raster::cos_sin_deg;

std::string_view to_string(Orientation o) {
  return o == Orientation::horizontal ? "horizontal" : "vertical";
}

std::string_view to_string(OpeningKind k) { return k == OpeningKind::door ? "door" : "window"; }

std::array<raster::PointF, 4> WallBox::corners() const {
  const auto [c, s] = cos_sin_deg(frame_angle_deg);
  const raster::PointF q[4] = {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
  std::array<raster::PointF, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = {c * q[i].x - s * q[i].y, s * q[i].x + c * q[i].y};
  return out;
}

raster::PointF WallBox::to_frame(raster::PointF p) const {
  const auto [c, s] = cos_sin_deg(frame_angle_deg);
  return {c * p.x + s * p.y, -s * p.x + c * p.y};
}

bool WallBox::covers_pixel(int px, int py) const {
  const raster::PointF q = to_frame({px + 0.5, py + 0.5});
  return q.x >= x && q.x < x + w && q.y >= y && q.y < y + h;
}

raster::PixelRect WallBox::pixel_bounds() const {
  const auto cs = corners();
  double x0 = cs[0].x, x1 = cs[0].x, y0 = cs[0].y, y1 = cs[0].y;
  for (const auto& p : cs) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const int ix0 = static_cast<int>(std::floor(x0)) - 1;
  const int iy0 = static_cast<int>(std::floor(y0)) - 1;
  const int ix1 = static_cast<int>(std::ceil(x1)) + 1;
  const int iy1 = static_cast<int>(std::ceil(y1)) + 1;
  return {ix0, iy0, ix1 - ix0, iy1 - iy0};
}

}  // namespace planvec

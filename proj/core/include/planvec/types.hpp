#pragma once

#include <array>
#include <string>
#include <string_view>

#include "planvec/raster.hpp"

namespace planvec {

enum class Orientation { horizontal, vertical };

std::string_view to_string(Orientation o);

/// A vectorized wall: an axis-aligned rectangle in a rotated frame.
///
/// The frame is the image plane (pixel-area coordinates) rotated by
/// -frame_angle_deg about the origin, i.e. a point p of the image has frame
/// coordinates q = R(-frame_angle_deg) p. With frame_angle_deg == 0 the
/// frame is the image itself.
struct WallBox {
  int id = 0;
  double frame_angle_deg = 0.0;
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  /// Horizontal iff w >= h.
  Orientation orientation() const { return w >= h ? Orientation::horizontal : Orientation::vertical; }
  double length() const { return w >= h ? w : h; }
  double thickness() const { return w >= h ? h : w; }

  /// Corners in image coordinates, counter-clockwise in the frame starting
  /// at (x, y): (x,y), (x+w,y), (x+w,y+h), (x,y+h).
  std::array<raster::PointF, 4> corners() const;
  /// Image point -> frame point.
  raster::PointF to_frame(raster::PointF image_point) const;
  /// Pixel-center inclusion test for pixel (px, py) of the image.
  bool covers_pixel(int px, int py) const;
  /// Integer pixel bounding box of the wall in the image (unclipped).
  raster::PixelRect pixel_bounds() const;

  bool operator==(const WallBox&) const = default;
};

enum class OpeningKind { door, window };

std::string_view to_string(OpeningKind k);

/// A detected door or window: an axis-aligned box in image pixels.
struct OpeningSymbol {
  OpeningKind kind = OpeningKind::door;
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double confidence = 1.0;

  bool operator==(const OpeningSymbol&) const = default;
};

}  // namespace planvec

#pragma once

// Raster primitives used by the vectorizer: binary and gray images,
// morphology, Gaussian blur, Canny edges, Hough voting, rotation,
// connected components with external contours and min-area rectangles.
//
// Coordinate conventions
// ----------------------
// Pixel indices (x, y) run right and down. Integer-valued geometry
// (contours, affine maps returned by rotate) lives in pixel-index space,
// where the pixel (x, y) sits at the point (x, y). Continuous geometry
// (boxes, wall rectangles) lives in pixel-area space, where pixel (x, y)
// covers [x, x+1) x [y, y+1) and its center is (x + 0.5, y + 0.5).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace planvec::raster {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

struct PointF {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const PointF&) const = default;
};

/// Integer pixel rectangle, half-open: covers [x, x + width) x [y, y + height).
struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  int right() const { return x + width; }
  int bottom() const { return y + height; }
  bool empty() const { return width <= 0 || height <= 0; }
  std::int64_t area() const {
    return empty() ? 0 : std::int64_t{width} * std::int64_t{height};
  }
  bool operator==(const PixelRect&) const = default;
};

/// Pixel index range [first, last) whose centers fall inside the
/// continuous interval [start, start + length).
std::pair<int, int> pixel_span(double start, double length);

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  bool at_or(int x, int y, bool outside) const {
    return in_bounds(x, y) ? at(x, y) : outside;
  }
  void set(int x, int y, bool value = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> data() const { return bits_; }
  std::span<std::uint8_t> data() { return bits_; }

  /// Number of foreground pixels.
  std::size_t count() const;
  bool any() const;
  /// Tight bounding box of the foreground; empty rect when there is none.
  PixelRect bounding_box() const;
  /// Copy of the pixels inside `rect`; pixels outside the mask read as background.
  BinaryMask crop(const PixelRect& rect) const;
  void fill_rect(const PixelRect& rect, bool value = true);

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int x, int y, std::uint8_t v) {
    pixels_[static_cast<std::size_t>(y) * width_ + x] = v;
  }
  std::span<const std::uint8_t> data() const { return pixels_; }
  std::span<std::uint8_t> data() { return pixels_; }

  GrayImage crop(const PixelRect& rect) const;

  bool operator==(const GrayImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

GrayImage to_gray(const BinaryMask& mask);
BinaryMask complement(const BinaryMask& mask);
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
/// a AND NOT b.
BinaryMask mask_subtract(const BinaryMask& a, const BinaryMask& b);
/// Foreground pixels set in both masks. Masks must have equal dimensions.
std::size_t count_and(const BinaryMask& a, const BinaryMask& b);

/// Summed-area table over a mask for O(1) rectangle counts.
class IntegralMask {
 public:
  explicit IntegralMask(const BinaryMask& mask);
  /// Foreground pixels inside `rect`, clipped to the mask.
  std::int64_t count(PixelRect rect) const;
  std::int64_t total() const { return count({0, 0, width_, height_}); }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> sums_;  // (width_ + 1) x (height_ + 1)
};

// --- morphology -----------------------------------------------------------

/// Rectangular structuring element anchored at its center.
class Kernel {
 public:
  /// Throws std::invalid_argument unless both dimensions are odd and >= 1.
  Kernel(int width, int height);
  static Kernel square(int side) { return Kernel(side, side); }

  int width() const { return width_; }
  int height() const { return height_; }
  int radius_x() const { return width_ / 2; }
  int radius_y() const { return height_ / 2; }

 private:
  int width_;
  int height_;
};

enum class MorphOp { erode, dilate, open, close };

/// Border policy: dilation never draws foreground from outside the image;
/// erosion only tests neighbours that lie inside the image. Together the
/// pair is an adjunction, so open/close are idempotent and open <= m <= close.
BinaryMask morph(const BinaryMask& mask, MorphOp op, const Kernel& kernel);

inline BinaryMask erode(const BinaryMask& m, const Kernel& k) { return morph(m, MorphOp::erode, k); }
inline BinaryMask dilate(const BinaryMask& m, const Kernel& k) { return morph(m, MorphOp::dilate, k); }
inline BinaryMask open(const BinaryMask& m, const Kernel& k) { return morph(m, MorphOp::open, k); }
inline BinaryMask close(const BinaryMask& m, const Kernel& k) { return morph(m, MorphOp::close, k); }

// --- smoothing and edges ----------------------------------------------------

/// Normalized 1-D Gaussian taps truncated at radius ceil(3 sigma).
std::vector<double> gaussian_taps(double sigma);

/// Separable Gaussian blur with zero padding outside the image.
std::vector<double> gaussian_blur(std::span<const double> values, int width, int height,
                                  double sigma);

/// Blur the mask (foreground = 255) and keep pixels whose value reaches
/// threshold * 255. sigma == 0 returns the input unchanged.
BinaryMask blur_threshold(const BinaryMask& mask, double sigma, double threshold);

/// Canny edge detector: Gaussian smoothing (sigma 1), Sobel gradients,
/// non-maximum suppression, and 8-connected double-threshold hysteresis.
BinaryMask canny(const GrayImage& image, double low, double high);

// --- Hough ------------------------------------------------------------------

struct HoughPeak {
  double theta_deg = 0.0;  // line normal angle in [0, 180)
  double rho_px = 0.0;     // signed distance from the origin pixel
  int votes = 0;
};

struct HoughAccumulator {
  int theta_bins = 0;
  int rho_bins = 0;
  double theta_res_deg = 1.0;
  double rho_res_px = 1.0;
  int rho_offset = 0;  // bin index of rho == 0
  std::vector<int> votes;  // theta-major: votes[t * rho_bins + r]

  int at(int t, int r) const { return votes[static_cast<std::size_t>(t) * rho_bins + r]; }
  double theta_deg(int t) const { return t * theta_res_deg; }
  double rho_px(int r) const { return (r - rho_offset) * rho_res_px; }
};

/// Votes of every edge pixel for rho = x cos(theta) + y sin(theta), with rho
/// spanning [-diag, +diag] and theta in [0, 180).
HoughAccumulator hough_accumulate(const BinaryMask& edges, double theta_res_deg,
                                  double rho_res_px);

enum class PeakMode {
  all_cells,     // every cell with enough votes
  local_maxima,  // only cells that dominate their 8-neighbourhood
};

/// Cells with votes >= max(min_votes, 1), sorted by descending votes
/// (ties by theta, then rho).
std::vector<HoughPeak> hough_peaks(const BinaryMask& edges, double theta_res_deg,
                                   double rho_res_px, int min_votes,
                                   PeakMode mode = PeakMode::all_cells);

// --- rotation ---------------------------------------------------------------

/// 2x3 affine map in pixel-index coordinates.
struct Affine2x3 {
  std::array<double, 6> m{1, 0, 0, 0, 1, 0};
  PointF apply(PointF p) const {
    return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
  }
};

struct AffineMap {
  Affine2x3 forward;  // input -> output
  Affine2x3 inverse;  // output -> input
};

struct RotationResult {
  BinaryMask mask;
  AffineMap map;
};

/// cos/sin of an angle in degrees, exact at multiples of 90.
std::pair<double, double> cos_sin_deg(double angle_deg);

/// Rotate the content by `angle_deg` (positive turns +x toward +y) about the
/// origin, then translate so the whole rotated image fits. Nearest-neighbour
/// sampling; multiples of 90 degrees are exact.
RotationResult rotate(const BinaryMask& mask, double angle_deg);

// --- components -------------------------------------------------------------

/// External boundary, closed implicitly (last point connects to first).
using Contour = std::vector<Point>;

struct Component {
  BinaryMask mask;   // cropped to bbox
  Contour contour;   // in parent-mask coordinates
  PixelRect bbox;
  std::size_t area = 0;
};

/// 8-connected components in raster order of their first pixel.
std::vector<Component> components(const BinaryMask& mask);

/// Outer boundary of the 8-connected component containing `start`, which
/// must be the component's first pixel in raster order.
Contour trace_outer_contour(const BinaryMask& mask, Point start);

// --- minimum-area rectangle -------------------------------------------------

struct RotatedRect {
  PointF center;
  double width = 0.0;   // extent along `angle_deg`
  double height = 0.0;  // extent along `angle_deg + 90`
  double angle_deg = 0.0;  // [0, 90)
};

std::vector<PointF> convex_hull(std::span<const PointF> points);

/// Throws std::invalid_argument on empty input.
RotatedRect min_area_rect(std::span<const PointF> points);
RotatedRect min_area_rect(std::span<const Point> points);

}  // namespace planvec::raster

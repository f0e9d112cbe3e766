#include <algorithm>
#include <cmath>
#include <vector>

#include "planvec/raster.hpp"

namespace planvec::raster {

namespace {

constexpr double kCannySigma = 1.0;
// Magnitudes that differ by less than this are treated as equal in
// non-maximum suppression so symmetric ridges thin to exactly one pixel.
constexpr double kTieEps = 1e-6;

struct FloatImage {
  int width;
  int height;
  std::vector<double> v;

  double clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return v[static_cast<std::size_t>(y) * width + x];
  }
};

FloatImage smooth_replicate(const GrayImage& image) {
  const auto taps = gaussian_taps(kCannySigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = image.width(), h = image.height();
  FloatImage tmp{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
  FloatImage out{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * image.at(std::clamp(x + k, 0, w - 1), y);
      }
      tmp.v[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * tmp.clamped(x, y + k);
      out.v[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

BinaryMask canny(const GrayImage& image, double low, double high) {
  const int w = image.width(), h = image.height();
  BinaryMask edges(w, h);
  if (w == 0 || h == 0) return edges;

  const FloatImage s = smooth_replicate(image);
  std::vector<double> mag(static_cast<std::size_t>(w) * h);
  std::vector<std::uint8_t> sector(mag.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (s.clamped(x + 1, y - 1) + 2 * s.clamped(x + 1, y) + s.clamped(x + 1, y + 1)) -
                        (s.clamped(x - 1, y - 1) + 2 * s.clamped(x - 1, y) + s.clamped(x - 1, y + 1));
      const double gy = (s.clamped(x - 1, y + 1) + 2 * s.clamped(x, y + 1) + s.clamped(x + 1, y + 1)) -
                        (s.clamped(x - 1, y - 1) + 2 * s.clamped(x, y - 1) + s.clamped(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = std::hypot(gx, gy);
      double deg = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
      if (deg < 0) deg += 180.0;
      // 0: horizontal gradient, 1: down-right diagonal, 2: vertical, 3: down-left diagonal
      std::uint8_t sec = 0;
      if (deg >= 22.5 && deg < 67.5) sec = 1;
      else if (deg >= 67.5 && deg < 112.5) sec = 2;
      else if (deg >= 112.5 && deg < 157.5) sec = 3;
      sector[i] = sec;
    }
  }

  static constexpr int kDx[4] = {1, 1, 0, -1};
  static constexpr int kDy[4] = {0, 1, 1, 1};
  auto mag_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };

  // 0 = none, 1 = weak, 2 = strong
  std::vector<std::uint8_t> cls(mag.size(), 0);
  std::vector<Point> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = mag[i];
      if (m < low || m <= 0.0) continue;
      const int dx = kDx[sector[i]], dy = kDy[sector[i]];
      const double behind = mag_at(x - dx, y - dy);
      const double ahead = mag_at(x + dx, y + dy);
      if (!(m > behind + kTieEps && m >= ahead - kTieEps)) continue;
      if (m >= high) {
        cls[i] = 2;
        stack.push_back({x, y});
      } else {
        cls[i] = 1;
      }
    }
  }

  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    edges.set(p.x, p.y);
    for (int ny = p.y - 1; ny <= p.y + 1; ++ny) {
      for (int nx = p.x - 1; nx <= p.x + 1; ++nx) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (cls[j] == 1) {
          cls[j] = 2;
          stack.push_back({nx, ny});
        }
      }
    }
  }
  return edges;
}

}  // namespace planvec::raster

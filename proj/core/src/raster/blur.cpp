#include <cmath>
#include <stdexcept>
#include <vector>

#include "planvec/raster.hpp"

namespace planvec::raster {

std::vector<double> gaussian_taps(double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[i + radius] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

std::vector<double> gaussian_blur(std::span<const double> values, int width, int height,
                                  double sigma) {
  const auto taps = gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  std::vector<double> tmp(values.size(), 0.0);
  std::vector<double> out(values.size(), 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int sx = x + k;
        if (sx >= 0 && sx < width) acc += taps[k + radius] * values[static_cast<std::size_t>(y) * width + sx];
      }
      tmp[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int sy = y + k;
        if (sy >= 0 && sy < height) acc += taps[k + radius] * tmp[static_cast<std::size_t>(sy) * width + x];
      }
      out[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  return out;
}

BinaryMask blur_threshold(const BinaryMask& mask, double sigma, double threshold) {
  if (sigma < 0.0) throw std::invalid_argument("blur sigma must be >= 0");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("blur threshold must lie in (0, 1)");
  }
  if (sigma == 0.0) return mask;
  std::vector<double> gray(mask.size());
  auto src = mask.data();
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = src[i] ? 255.0 : 0.0;
  const auto blurred = gaussian_blur(gray, mask.width(), mask.height(), sigma);
  BinaryMask out(mask.width(), mask.height());
  auto dst = out.data();
  const double cut = threshold * 255.0;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = blurred[i] >= cut ? 1 : 0;
  return out;
}

}  // namespace planvec::raster

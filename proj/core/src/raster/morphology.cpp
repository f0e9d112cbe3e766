#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "planvec/raster.hpp"

namespace planvec::raster {

Kernel::Kernel(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
    throw std::invalid_argument("kernel dimensions must be odd and positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

namespace {

// One 1-D pass over `len` samples spaced `stride` apart. A rectangular
// element is the product of two intervals, and clipping to the image
// preserves that, so erosion/dilation separate into row and column passes.
void pass_1d(const std::uint8_t* src, std::uint8_t* dst, int len, std::ptrdiff_t stride,
             int radius, bool erode, std::vector<int>& prefix) {
  prefix.assign(static_cast<std::size_t>(len) + 1, 0);
  for (int i = 0; i < len; ++i) {
    const bool v = src[i * stride] != 0;
    // erosion counts background samples, dilation counts foreground samples
    prefix[i + 1] = prefix[i] + ((erode ? !v : v) ? 1 : 0);
  }
  for (int i = 0; i < len; ++i) {
    const int lo = std::max(0, i - radius);
    const int hi = std::min(len, i + radius + 1);
    const int hits = prefix[hi] - prefix[lo];
    dst[i * stride] = erode ? (hits == 0) : (hits > 0);
  }
}

BinaryMask erode_or_dilate(const BinaryMask& mask, const Kernel& kernel, bool erode) {
  const int w = mask.width(), h = mask.height();
  if (w == 0 || h == 0) return mask;
  BinaryMask tmp(w, h);
  BinaryMask out(w, h);
  std::vector<int> prefix;
  const std::uint8_t* src = mask.data().data();
  std::uint8_t* mid = tmp.data().data();
  for (int y = 0; y < h; ++y) {
    pass_1d(src + static_cast<std::ptrdiff_t>(y) * w, mid + static_cast<std::ptrdiff_t>(y) * w, w,
            1, kernel.radius_x(), erode, prefix);
  }
  std::uint8_t* dst = out.data().data();
  for (int x = 0; x < w; ++x) {
    pass_1d(mid + x, dst + x, h, w, kernel.radius_y(), erode, prefix);
  }
  return out;
}

}  // namespace

BinaryMask morph(const BinaryMask& mask, MorphOp op, const Kernel& kernel) {
  switch (op) {
    case MorphOp::erode:
      return erode_or_dilate(mask, kernel, true);
    case MorphOp::dilate:
      return erode_or_dilate(mask, kernel, false);
    case MorphOp::open:
      return erode_or_dilate(erode_or_dilate(mask, kernel, true), kernel, false);
    case MorphOp::close:
      return erode_or_dilate(erode_or_dilate(mask, kernel, false), kernel, true);
  }
  throw std::invalid_argument("unknown morphology op");
}

}  // namespace planvec::raster

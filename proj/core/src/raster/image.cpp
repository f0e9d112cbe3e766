#include "planvec/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planvec::raster {

std::pair<int, int> pixel_span(double start, double length) {
  const int first = static_cast<int>(std::ceil(start - 0.5));
  const int last = static_cast<int>(std::ceil(start + length - 0.5));
  return {first, std::max(first, last)};
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("BinaryMask: negative dimension");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill ? 1 : 0);
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const {
  return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

PixelRect BinaryMask::bounding_box() const {
  int x0 = width_, y0 = height_, x1 = -1, y1 = -1;
  for (int y = 0; y < height_; ++y) {
    const std::uint8_t* row = bits_.data() + static_cast<std::size_t>(y) * width_;
    for (int x = 0; x < width_; ++x) {
      if (row[x]) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) return {};
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

BinaryMask BinaryMask::crop(const PixelRect& rect) const {
  BinaryMask out(std::max(rect.width, 0), std::max(rect.height, 0));
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (at_or(rect.x + x, rect.y + y, false)) out.set(x, y);
    }
  }
  return out;
}

void BinaryMask::fill_rect(const PixelRect& rect, bool value) {
  const int x0 = std::max(rect.x, 0), x1 = std::min(rect.right(), width_);
  const int y0 = std::max(rect.y, 0), y1 = std::min(rect.bottom(), height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, value);
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("GrayImage: negative dimension");
  }
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage GrayImage::crop(const PixelRect& rect) const {
  GrayImage out(std::max(rect.width, 0), std::max(rect.height, 0));
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const int sx = rect.x + x, sy = rect.y + y;
      if (sx >= 0 && sy >= 0 && sx < width_ && sy < height_) out.set(x, y, at(sx, sy));
    }
  }
  return out;
}

GrayImage to_gray(const BinaryMask& mask) {
  GrayImage out(mask.width(), mask.height());
  auto src = mask.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 255 : 0;
  return out;
}

namespace {

void require_same_dims(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("mask dimensions differ");
  }
}

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, Op op) {
  require_same_dims(a, b);
  BinaryMask out(a.width(), a.height());
  auto da = a.data(), db = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(da[i] != 0, db[i] != 0) ? 1 : 0;
  return out;
}

}  // namespace

BinaryMask complement(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  auto src = mask.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 0 : 1;
  return out;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, [](bool p, bool q) { return p && q; });
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, [](bool p, bool q) { return p || q; });
}

BinaryMask mask_subtract(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, [](bool p, bool q) { return p && !q; });
}

std::size_t count_and(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b);
  auto da = a.data(), db = b.data();
  std::size_t n = 0;
  for (std::size_t i = 0; i < da.size(); ++i) n += (da[i] & db[i]);
  return n;
}

IntegralMask::IntegralMask(const BinaryMask& mask)
    : width_(mask.width()), height_(mask.height()) {
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  sums_.assign(stride * (static_cast<std::size_t>(height_) + 1), 0);
  for (int y = 0; y < height_; ++y) {
    std::int64_t row = 0;
    for (int x = 0; x < width_; ++x) {
      row += mask.at(x, y) ? 1 : 0;
      sums_[(y + 1) * stride + (x + 1)] = sums_[y * stride + (x + 1)] + row;
    }
  }
}

std::int64_t IntegralMask::count(PixelRect r) const {
  const int x0 = std::clamp(r.x, 0, width_), x1 = std::clamp(r.right(), 0, width_);
  const int y0 = std::clamp(r.y, 0, height_), y1 = std::clamp(r.bottom(), 0, height_);
  if (x1 <= x0 || y1 <= y0) return 0;
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  return sums_[y1 * stride + x1] - sums_[y0 * stride + x1] - sums_[y1 * stride + x0] +
         sums_[y0 * stride + x0];
}

}  // namespace planvec::raster

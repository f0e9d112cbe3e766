#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "planvec/boxfit.hpp"
#include "planvec/raster.hpp"
#include "planvec/types.hpp"

namespace fixture {

using planvec::raster::BinaryMask;
using planvec::raster::PixelRect;

inline BinaryMask rect_mask(int w, int h, std::initializer_list<PixelRect> rects) {
  BinaryMask m(w, h);
  for (const auto& r : rects) m.fill_rect(r);
  return m;
}

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, on(rng));
  return m;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Union of `n` random rectangles inside a w x h canvas.
inline BinaryMask random_rects(std::mt19937_64& rng, int w, int h, int n, int max_side) {
  BinaryMask m(w, h);
  for (int i = 0; i < n; ++i) {
    const int rw = uniform(rng, 1, max_side), rh = uniform(rng, 1, max_side);
    m.fill_rect({uniform(rng, 0, w - 1), uniform(rng, 0, h - 1), rw, rh});
  }
  return m;
}

/// Random blob grown from a seed pixel by a random walk, kept within w x h.
inline BinaryMask random_blob(std::mt19937_64& rng, int w, int h, int steps) {
  BinaryMask m(w, h);
  int x = w / 2, y = h / 2;
  m.set(x, y);
  for (int i = 0; i < steps; ++i) {
    switch (uniform(rng, 0, 3)) {
      case 0: x = std::min(w - 1, x + 1); break;
      case 1: x = std::max(0, x - 1); break;
      case 2: y = std::min(h - 1, y + 1); break;
      default: y = std::max(0, y - 1); break;
    }
    m.set(x, y);
    if (uniform(rng, 0, 2) == 0) m.fill_rect({x, y, uniform(rng, 1, 4), uniform(rng, 1, 4)});
  }
  return m.crop({0, 0, w, h});
}

inline planvec::boxfit::Region region_of(const BinaryMask& m, planvec::raster::Point offset = {}) {
  const PixelRect bb = m.bounding_box();
  return {m.crop(bb), {offset.x + bb.x, offset.y + bb.y}};
}

inline std::string bytes_to_string(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

}  // namespace fixture

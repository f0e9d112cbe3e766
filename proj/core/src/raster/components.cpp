#include <algorithm>
#include <optional>
#include <vector>

#include "planvec/raster.hpp"

namespace planvec::raster {

namespace {

// Clockwise on screen (y grows downward), starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction_of(int dx, int dy) {
  for (int d = 0; d < 8; ++d) {
    if (kDx[d] == dx && kDy[d] == dy) return d;
  }
  return -1;
}

}  // namespace

Contour trace_outer_contour(const BinaryMask& mask, Point start) {
  Contour contour{start};
  // The raster-first pixel has background to its west.
  int backtrack = 4;
  Point current = start;
  Point first_step{-1, -1};

  auto next_from = [&](Point c, int from_dir, int& new_backtrack) -> std::optional<Point> {
    for (int k = 1; k <= 8; ++k) {
      const int d = (from_dir + k) % 8;
      const Point n{c.x + kDx[d], c.y + kDy[d]};
      if (mask.at_or(n.x, n.y, false)) {
        const int prev = (d + 7) % 8;
        const Point b{c.x + kDx[prev], c.y + kDy[prev]};
        new_backtrack = direction_of(b.x - n.x, b.y - n.y);
        return n;
      }
    }
    return std::nullopt;
  };

  int nb = 0;
  auto first = next_from(current, backtrack, nb);
  if (!first) return contour;  // isolated pixel
  first_step = *first;
  current = *first;
  backtrack = nb;
  const std::size_t guard = 4 * mask.size() + 8;
  while (contour.size() <= guard) {
    if (current == start) {
      int probe_back = 0;
      auto probe = next_from(current, backtrack, probe_back);
      if (probe && *probe == first_step) break;
      contour.push_back(current);
      current = *probe;
      backtrack = probe_back;
      continue;
    }
    contour.push_back(current);
    auto n = next_from(current, backtrack, nb);
    current = *n;
    backtrack = nb;
  }
  return contour;
}

std::vector<Component> components(const BinaryMask& mask) {
  const int w = mask.width(), h = mask.height();
  std::vector<int> label(mask.size(), -1);
  std::vector<Component> out;
  std::vector<Point> stack;
  std::vector<Point> pixels;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.at(x, y) || label[idx] >= 0) continue;
      const int id = static_cast<int>(out.size());
      pixels.clear();
      stack.push_back({x, y});
      label[idx] = id;
      int x0 = x, x1 = x, y0 = y, y1 = y;
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        pixels.push_back(p);
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
        for (int d = 0; d < 8; ++d) {
          const int nx = p.x + kDx[d], ny = p.y + kDy[d];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (mask.at(nx, ny) && label[nidx] < 0) {
            label[nidx] = id;
            stack.push_back({nx, ny});
          }
        }
      }
      Component comp;
      comp.bbox = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
      comp.area = pixels.size();
      comp.mask = BinaryMask(comp.bbox.width, comp.bbox.height);
      for (const Point& p : pixels) comp.mask.set(p.x - x0, p.y - y0);
      comp.contour = trace_outer_contour(comp.mask, {x - x0, y - y0});
      for (Point& p : comp.contour) {
        p.x += x0;
        p.y += y0;
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

}  // namespace planvec::raster

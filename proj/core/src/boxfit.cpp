#include "planvec/boxfit.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace planvec::boxfit {

using raster::BinaryMask;
using raster::IntegralMask;
using raster::PixelRect;

raster::PixelRect pixel_rect(const FitBox& box) {
  const auto [x0, x1] = raster::pixel_span(box.x, box.w);
  const auto [y0, y1] = raster::pixel_span(box.y, box.h);
  return {x0, y0, x1 - x0, y1 - y0};
}

double intersection_area(const FitBox& a, const FitBox& b) {
  const double w = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double h = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

double region_box_iou(const Region& region, const FitBox& box) {
  if (!(box.w > 0.0 && box.h > 0.0)) {
    throw std::invalid_argument("region_box_iou: box must have positive area");
  }
  PixelRect r = pixel_rect(box);
  const std::int64_t box_px = r.area();
  r.x -= region.offset.x;
  r.y -= region.offset.y;
  IntegralMask integral(region.mask);
  const std::int64_t inter = integral.count(r);
  const std::int64_t wall = integral.total();
  const std::int64_t uni = box_px + wall - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Box in region-local integer coordinates, half-open.
struct IBox {
  int x0, y0, x1, y1;
  int w() const { return x1 - x0; }
  int h() const { return y1 - y0; }
  PixelRect rect() const { return {x0, y0, x1 - x0, y1 - y0}; }
};

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  // exact comparison of num/den
  bool greater_than(const Ratio& o) const { return num * o.den > o.num * den; }
  bool at_least(double target) const {
    return static_cast<long double>(num) >= static_cast<long double>(target) * den;
  }
};

Ratio box_iou(const IntegralMask& integral, std::int64_t wall, const IBox& b) {
  const std::int64_t inter = integral.count(b.rect());
  const std::int64_t area = std::int64_t{b.w()} * b.h();
  return {inter, area + wall - inter};
}

}  // namespace

ShrinkResult shrink_box(const Region& region, const PipelineConfig& cfg) {
  ShrinkResult out;
  const PixelRect bb = region.mask.bounding_box();
  if (bb.empty()) throw std::invalid_argument("shrink_box: empty region");

  const IntegralMask integral(region.mask);
  const std::int64_t wall = integral.total();
  const int min_side = cfg.min_box_side_px;

  IBox cur{bb.x, bb.y, bb.right(), bb.bottom()};
  Ratio cur_iou = box_iou(integral, wall, cur);
  auto to_fit = [&](const IBox& b, const Ratio& iou) {
    return FitBox{static_cast<double>(b.x0 + region.offset.x), static_cast<double>(b.y0 + region.offset.y),
                  static_cast<double>(b.w()), static_cast<double>(b.h()), iou.value()};
  };
  out.initial = to_fit(cur, cur_iou);
  out.adopted_iou.push_back(cur_iou.value());
  if (cur.w() < min_side || cur.h() < min_side) {
    out.too_small = true;
    out.box = out.initial;
    return out;
  }

  while (!cur_iou.at_least(cfg.shrink_iou_target)) {
    // top, left, bottom, right
    const std::array<IBox, 4> candidates = {IBox{cur.x0, cur.y0 + 1, cur.x1, cur.y1},
                                            IBox{cur.x0 + 1, cur.y0, cur.x1, cur.y1},
                                            IBox{cur.x0, cur.y0, cur.x1, cur.y1 - 1},
                                            IBox{cur.x0, cur.y0, cur.x1 - 1, cur.y1}};
    int best = -1;
    Ratio best_iou;
    for (int i = 0; i < 4; ++i) {
      const IBox& c = candidates[i];
      if (c.w() < min_side || c.h() < min_side) continue;
      const Ratio r = box_iou(integral, wall, c);
      if (best < 0 || r.greater_than(best_iou)) {
        best = i;
        best_iou = r;
      }
    }
    if (best < 0 || !best_iou.greater_than(cur_iou)) break;
    cur = candidates[best];
    cur_iou = best_iou;
    ++out.iterations;
    out.adopted_iou.push_back(cur_iou.value());
  }
  out.box = to_fit(cur, cur_iou);
  return out;
}

std::vector<FitBox> shrink_fit(const Region& region, const PipelineConfig& cfg) {
  std::vector<FitBox> boxes;
  if (!region.mask.any()) return boxes;
  const ShrinkResult fit = shrink_box(region, cfg);
  if (fit.too_small) return boxes;
  boxes.push_back(fit.box);

  BinaryMask residual = region.mask;
  PixelRect covered = pixel_rect(fit.box);
  covered.x -= region.offset.x;
  covered.y -= region.offset.y;
  residual.fill_rect(covered, false);

  for (auto& chunk : raster::components(residual)) {
    if (chunk.area < static_cast<std::size_t>(cfg.min_chunk_area_px)) continue;
    Region sub{std::move(chunk.mask),
               {region.offset.x + chunk.bbox.x, region.offset.y + chunk.bbox.y}};
    auto more = shrink_fit(sub, cfg);
    boxes.insert(boxes.end(), more.begin(), more.end());
  }
  return boxes;
}

}  // namespace planvec::boxfit

#include <algorithm>
#include <array>
#include <limits>
#include <optional>

#include "planvec/boxfit.hpp"

namespace planvec::boxfit {

using raster::BinaryMask;
using raster::IntegralMask;
using raster::PixelRect;

namespace {

constexpr double kAreaEps = 1e-9;

// Union of all regions rasterized into one frame-aligned lookup.
class WallLookup {
 public:
  explicit WallLookup(std::span<const Region> regions) {
    int x0 = std::numeric_limits<int>::max(), y0 = x0;
    int x1 = std::numeric_limits<int>::min(), y1 = x1;
    for (const auto& r : regions) {
      if (r.mask.width() == 0 || r.mask.height() == 0) continue;
      x0 = std::min(x0, r.offset.x);
      y0 = std::min(y0, r.offset.y);
      x1 = std::max(x1, r.offset.x + r.mask.width());
      y1 = std::max(y1, r.offset.y + r.mask.height());
    }
    if (x1 <= x0 || y1 <= y0) {
      integral_.emplace(BinaryMask());
      return;
    }
    origin_ = {x0, y0};
    BinaryMask m(x1 - x0, y1 - y0);
    for (const auto& r : regions) {
      for (int y = 0; y < r.mask.height(); ++y) {
        for (int x = 0; x < r.mask.width(); ++x) {
          if (r.mask.at(x, y)) m.set(r.offset.x - x0 + x, r.offset.y - y0 + y);
        }
      }
    }
    integral_.emplace(m);
  }

  std::int64_t count(PixelRect r) const {
    if (r.empty()) return 0;
    r.x -= origin_.x;
    r.y -= origin_.y;
    return integral_->count(r);
  }

 private:
  raster::Point origin_;
  std::optional<IntegralMask> integral_;
};

PixelRect intersect(const PixelRect& a, const PixelRect& b) {
  const int x0 = std::max(a.x, b.x), y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right()), y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return {};
  return {x0, y0, x1 - x0, y1 - y0};
}

bool contains(const FitBox& outer, const FitBox& inner) {
  return inner.x >= outer.x && inner.y >= outer.y && inner.x + inner.w <= outer.x + outer.w &&
         inner.y + inner.h <= outer.y + outer.h;
}

struct Trim {
  bool valid = false;
  bool removes = false;
  FitBox result;
  std::int64_t loss = 0;
  double removed_area = 0.0;
};

// Wall pixels removed from `box` by shrinking it to `result` (or deleting it),
// excluding pixels the partner box still covers.
std::int64_t removal_loss(const WallLookup& wall, const FitBox& box, const FitBox* result,
                          const FitBox& partner) {
  const PixelRect whole = pixel_rect(box);
  const PixelRect keep = result ? pixel_rect(*result) : PixelRect{};
  const PixelRect part = pixel_rect(partner);
  auto uncovered = [&](const PixelRect& r) { return wall.count(r) - wall.count(intersect(r, part)); };
  return uncovered(whole) - uncovered(intersect(whole, keep));
}

// Best one-sided trim of `box` that empties its intersection with `partner`.
Trim best_trim(const WallLookup& wall, const FitBox& box, const FitBox& partner, int min_side) {
  const double ix0 = std::max(box.x, partner.x), ix1 = std::min(box.x + box.w, partner.x + partner.w);
  const double iy0 = std::max(box.y, partner.y), iy1 = std::min(box.y + box.h, partner.y + partner.h);
  // top, left, bottom, right
  std::array<FitBox, 4> cand;
  cand.fill(box);
  cand[0].y = iy1;
  cand[0].h = box.y + box.h - iy1;
  cand[1].x = ix1;
  cand[1].w = box.x + box.w - ix1;
  cand[2].h = iy0 - box.y;
  cand[3].w = ix0 - box.x;

  Trim best;
  for (const FitBox& c : cand) {
    if (!(c.w > kAreaEps && c.h > kAreaEps)) continue;
    Trim t;
    t.valid = true;
    t.removes = c.w < min_side || c.h < min_side;
    t.result = c;
    t.loss = removal_loss(wall, box, t.removes ? nullptr : &c, partner);
    t.removed_area = t.removes ? box.area() : box.area() - c.area();
    if (!best.valid || t.loss < best.loss ||
        (t.loss == best.loss && t.removed_area < best.removed_area - kAreaEps)) {
      best = t;
    }
  }
  return best;
}

}  // namespace

std::vector<FitBox> resolve_overlaps(std::span<const FitBox> input, std::span<const Region> regions,
                                     int min_box_side_px, OverlapReport* report) {
  std::vector<FitBox> boxes(input.begin(), input.end());
  std::vector<bool> alive(boxes.size(), true);
  const WallLookup wall(regions);
  OverlapReport local;

  for (;;) {
    int bi = -1, bj = -1;
    double best_area = kAreaEps;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        if (!alive[j]) continue;
        const double a = intersection_area(boxes[i], boxes[j]);
        if (a > best_area) {
          best_area = a;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    }
    if (bi < 0) break;

    const FitBox& a = boxes[bi];
    const FitBox& b = boxes[bj];
    OverlapEvent ev;
    const bool a_in_b = contains(b, a), b_in_a = contains(a, b);
    if (a_in_b || b_in_a) {
      int drop;
      if (a_in_b && b_in_a) drop = bj;  // identical: keep the earlier one
      else drop = a_in_b ? bi : bj;
      ev.action = OverlapEvent::Action::drop_contained;
      ev.changed = drop;
      ev.other = drop == bi ? bj : bi;
      ev.before_changed = boxes[ev.changed];
      ev.before_other = boxes[ev.other];
      alive[drop] = false;
      local.events.push_back(ev);
      continue;
    }

    const Trim ta = best_trim(wall, a, b, min_box_side_px);
    const Trim tb = best_trim(wall, b, a, min_box_side_px);
    bool trim_a;
    if (!ta.valid || !tb.valid) {
      trim_a = ta.valid;
    } else if (ta.loss != tb.loss) {
      trim_a = ta.loss < tb.loss;
    } else if (std::abs(a.area() - b.area()) > kAreaEps) {
      trim_a = a.area() < b.area();
    } else {
      trim_a = bi > bj;  // larger id is trimmed
    }
    const Trim& t = trim_a ? ta : tb;
    ev.changed = trim_a ? bi : bj;
    ev.other = trim_a ? bj : bi;
    ev.before_changed = boxes[ev.changed];
    ev.before_other = boxes[ev.other];
    ev.loss = t.loss;
    ev.alternative_loss = trim_a ? tb.loss : ta.loss;
    if (t.removes) {
      ev.action = OverlapEvent::Action::remove_too_small;
      alive[ev.changed] = false;
    } else {
      ev.action = OverlapEvent::Action::trim;
      ev.after = t.result;
      boxes[ev.changed] = t.result;
    }
    local.total_loss += t.loss;
    local.events.push_back(ev);
  }

  std::vector<FitBox> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (alive[i]) out.push_back(boxes[i]);
  }
  if (report) *report = std::move(local);
  return out;
}

}  // namespace planvec::boxfit

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "planvec/planio.hpp"

namespace planvec::planio {

namespace {

// Portable draws: the standard distributions are implementation-defined,
// so the generator output is mapped by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform_int(int lo, int hi) {  // inclusive
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

struct IRect {
  int x, y, w, h;
  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool horizontal() const { return w >= h; }
  bool intersects(const IRect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
  IRect grown(int d) const { return {x - d, y - d, w + 2 * d, h + 2 * d}; }
};

constexpr int kMargin = 8;
constexpr int kMinRoom = 16;     // free space on each side of a partition
constexpr int kMinPiece = 16;    // wall length left on each side of a gap
constexpr int kGapClearance = 3; // gap distance to any other wall
constexpr int kSymbolPad = 2;

std::vector<IRect> rectilinear_layout(const IRect& outer, const SynthSpec& spec, Rng& rng) {
  auto thickness = [&] { return rng.uniform_int(spec.wall_thickness_min_px, spec.wall_thickness_max_px); };
  const int tt = thickness(), tb = thickness(), tl = thickness(), tr = thickness();
  std::vector<IRect> walls = {
      {outer.x, outer.y, outer.w, tt},
      {outer.x, outer.bottom() - tb, outer.w, tb},
      {outer.x, outer.y + tt, tl, outer.h - tt - tb},
      {outer.right() - tr, outer.y + tt, tr, outer.h - tt - tb},
  };
  std::vector<IRect> rooms = {{outer.x + tl, outer.y + tt, outer.w - tl - tr, outer.h - tt - tb}};

  while (static_cast<int>(walls.size()) < spec.n_rect_walls) {
    const int t = thickness();
    auto splittable_x = [&](const IRect& r) { return r.w >= 2 * kMinRoom + t; };
    auto splittable_y = [&](const IRect& r) { return r.h >= 2 * kMinRoom + t; };
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < rooms.size(); ++i) {
      if (splittable_x(rooms[i]) || splittable_y(rooms[i])) candidates.push_back(i);
    }
    if (candidates.empty()) {
      throw SynthError("cannot place " + std::to_string(spec.n_rect_walls) + " walls on a " +
                       std::to_string(spec.canvas_width) + "x" + std::to_string(spec.canvas_height) + " canvas");
    }
    const std::size_t pick = candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
    const IRect room = rooms[pick];
    bool vertical_wall = room.w >= room.h;
    if (vertical_wall && !splittable_x(room)) vertical_wall = false;
    if (!vertical_wall && !splittable_y(room)) vertical_wall = true;
    if (vertical_wall) {
      const int pos = rng.uniform_int(room.x + kMinRoom, room.right() - kMinRoom - t);
      walls.push_back({pos, room.y, t, room.h});
      rooms[pick] = {room.x, room.y, pos - room.x, room.h};
      rooms.push_back({pos + t, room.y, room.right() - pos - t, room.h});
    } else {
      const int pos = rng.uniform_int(room.y + kMinRoom, room.bottom() - kMinRoom - t);
      walls.push_back({room.x, pos, room.w, t});
      rooms[pick] = {room.x, room.y, room.w, pos - room.y};
      rooms.push_back({room.x, pos + t, room.w, room.bottom() - pos - t});
    }
  }
  return walls;
}

// Cut an opening gap through a random wall; the wall splits in two pieces.
bool cut_gap(std::vector<IRect>& walls, OpeningKind kind, Rng& rng, std::vector<OpeningSymbol>& symbols) {
  const int width_lo = 12;
  const int width_hi = kind == OpeningKind::door ? 20 : 24;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::size_t host_index = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(walls.size()) - 1));
    const IRect host = walls[host_index];
    const int length = host.horizontal() ? host.w : host.h;
    const int gap = rng.uniform_int(width_lo, width_hi);
    if (length < gap + 2 * kMinPiece) continue;
    const int offset = rng.uniform_int(kMinPiece, length - kMinPiece - gap);
    const IRect cut = host.horizontal() ? IRect{host.x + offset, host.y, gap, host.h}
                                        : IRect{host.x, host.y + offset, host.w, gap};
    bool clear = true;
    for (std::size_t i = 0; i < walls.size() && clear; ++i) {
      if (i != host_index && walls[i].intersects(cut.grown(kGapClearance))) clear = false;
    }
    if (!clear) continue;

    IRect first = host, second = host;
    if (host.horizontal()) {
      first.w = offset;
      second.x = host.x + offset + gap;
      second.w = length - offset - gap;
    } else {
      first.h = offset;
      second.y = host.y + offset + gap;
      second.h = length - offset - gap;
    }
    walls[host_index] = first;
    walls.insert(walls.begin() + static_cast<std::ptrdiff_t>(host_index) + 1, second);

    const IRect box = cut.grown(kSymbolPad);
    OpeningSymbol s;
    s.kind = kind;
    s.x = box.x;
    s.y = box.y;
    s.w = box.w;
    s.h = box.h;
    symbols.push_back(s);
    return true;
  }
  return false;
}

// Four walls of a square room rotated by `angle_deg`, centered at `center`.
std::vector<WallBox> inclined_room(double angle_deg, raster::PointF center, int side, int t) {
  const auto [c, s] = raster::cos_sin_deg(angle_deg);
  const double qx = c * center.x + s * center.y;  // R(-angle) * center
  const double qy = -s * center.x + c * center.y;
  const double fx = std::round(qx - side / 2.0), fy = std::round(qy - side / 2.0);
  const double L = side, T = t;
  std::vector<WallBox> walls = {
      {0, angle_deg, fx, fy, L, T},
      {0, angle_deg, fx, fy + L - T, L, T},
      {0, angle_deg, fx, fy + T, T, L - 2 * T},
      {0, angle_deg, fx + L - T, fy + T, T, L - 2 * T},
  };
  return walls;
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& m) { throw SynthError("synth spec: " + m); };
  if (canvas_width < 64 || canvas_height < 64) fail("canvas must be at least 64x64");
  if (canvas_width > 16384 || canvas_height > 16384) fail("canvas larger than 16384 px");
  if (n_rect_walls < 4) fail("n_rect_walls must be >= 4 (the perimeter)");
  if (wall_thickness_min_px < 1 || wall_thickness_max_px < wall_thickness_min_px) fail("bad wall thickness range");
  if (!(noise_speckle_density >= 0 && noise_speckle_density < 1)) fail("noise_speckle_density must lie in [0, 1)");
  if (!(hole_density >= 0 && hole_density < 1)) fail("hole_density must lie in [0, 1)");
  if (n_doors < 0 || n_windows < 0) fail("opening counts must be >= 0");
  if (inclined_wing_deg && !std::isfinite(*inclined_wing_deg)) fail("inclined_wing_deg must be finite");
}

SynthPlan synth_plan(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int W = spec.canvas_width, H = spec.canvas_height;

  // The main plan takes the whole canvas, or its left part when a wing is requested.
  const int avail_w = W - 2 * kMargin;
  const int main_w = spec.inclined_wing_deg ? avail_w * 11 / 20 : avail_w;
  const int main_h = H - 2 * kMargin;
  const int shrink_x = rng.uniform_int(0, main_w / 16), shrink_y = rng.uniform_int(0, main_h / 16);
  const IRect outer{kMargin + shrink_x, kMargin + shrink_y, main_w - 2 * shrink_x, main_h - 2 * shrink_y};
  std::vector<IRect> walls = rectilinear_layout(outer, spec, rng);

  SynthPlan plan;
  for (int i = 0; i < spec.n_doors; ++i) cut_gap(walls, OpeningKind::door, rng, plan.truth_symbols);
  for (int i = 0; i < spec.n_windows; ++i) cut_gap(walls, OpeningKind::window, rng, plan.truth_symbols);

  for (const auto& r : walls) plan.truth_walls.push_back({0, 0.0, double(r.x), double(r.y), double(r.w), double(r.h)});

  if (spec.inclined_wing_deg) {
    const double angle = *spec.inclined_wing_deg;
    const auto [c, s] = raster::cos_sin_deg(angle);
    const double spread = std::abs(c) + std::abs(s);
    const int left = kMargin + main_w + kMargin;
    const int room_w = W - kMargin - left;
    const int room_h = H - 2 * kMargin;
    const int side = static_cast<int>(std::floor((std::min(room_w, room_h) - 4) / spread));
    const int t = rng.uniform_int(spec.wall_thickness_min_px, spec.wall_thickness_max_px);
    if (side < 2 * t + kMinRoom) throw SynthError("canvas too small for the inclined wing");
    const raster::PointF center{left + room_w / 2.0, kMargin + room_h / 2.0};
    for (const auto& w : inclined_room(angle, center, side, t)) {
      plan.wing_wall_ids.push_back(static_cast<int>(plan.truth_walls.size()));
      plan.truth_walls.push_back(w);
    }
  }
  for (std::size_t i = 0; i < plan.truth_walls.size(); ++i) plan.truth_walls[i].id = static_cast<int>(i);

  plan.clean_mask = rasterize_walls(plan.truth_walls, W, H);
  plan.mask = plan.clean_mask;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      if (plan.clean_mask.at(x, y)) {
        if (spec.hole_density > 0 && rng.bernoulli(spec.hole_density)) plan.mask.set(x, y, false);
      } else if (spec.noise_speckle_density > 0 && rng.bernoulli(spec.noise_speckle_density)) {
        plan.mask.set(x, y, true);
      }
    }
  }
  return plan;
}

SynthSpec synth_spec_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SynthError(std::string("synth spec: ") + e.what());
  }
  if (!doc.is_object()) throw SynthError("synth spec: expected a JSON object");
  SynthSpec spec;
  for (const auto& [key, value] : doc.items()) {
    auto integer = [&](auto& field) {
      if (!value.is_number_integer()) throw SynthError("synth spec: \"" + key + "\" must be an integer");
      field = value.get<std::remove_reference_t<decltype(field)>>();
    };
    auto real = [&](double& field) {
      if (!value.is_number()) throw SynthError("synth spec: \"" + key + "\" must be a number");
      field = value.get<double>();
    };
    if (key == "seed") {
      if (!value.is_number_unsigned()) throw SynthError("synth spec: \"seed\" must be a non-negative integer");
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "canvas_width") {
      integer(spec.canvas_width);
    } else if (key == "canvas_height") {
      integer(spec.canvas_height);
    } else if (key == "n_rect_walls") {
      integer(spec.n_rect_walls);
    } else if (key == "wall_thickness_min_px") {
      integer(spec.wall_thickness_min_px);
    } else if (key == "wall_thickness_max_px") {
      integer(spec.wall_thickness_max_px);
    } else if (key == "inclined_wing_deg") {
      if (value.is_null()) {
        spec.inclined_wing_deg.reset();
      } else {
        double v = 0;
        real(v);
        spec.inclined_wing_deg = v;
      }
    } else if (key == "noise_speckle_density") {
      real(spec.noise_speckle_density);
    } else if (key == "hole_density") {
      real(spec.hole_density);
    } else if (key == "n_doors") {
      integer(spec.n_doors);
    } else if (key == "n_windows") {
      integer(spec.n_windows);
    } else {
      throw SynthError("synth spec: unknown field \"" + key + "\"");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace planvec::planio

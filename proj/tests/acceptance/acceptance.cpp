// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "planvec/boxfit.hpp"
#include "planvec/extraction.hpp"
#include "planvec/planio.hpp"
#include "planvec/reconstruct.hpp"

#ifdef PLANVEC_HAVE_CLI
#include "cli.hpp"
#endif

using namespace planvec;
using raster::BinaryMask;

namespace {

// Pinned tolerances.
constexpr int kAc1Plans = 50;
constexpr double kAc1MaxDrop = 0.02;
constexpr double kAc1MaxSeconds = 2.0;
constexpr int kAc1TimedPlans = 3;
constexpr int kAc2MinSide = 3, kAc2MaxSide = 40;
constexpr double kAc3Angle = 30.0, kAc3AngleTol = 2.0, kAc3MinIou = 0.9;
constexpr int kAc4Sets = 1000;
constexpr int kAc5Pairs = 500;
constexpr int kAc8Components = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome ac1() {
  const PipelineConfig cfg;
  double vect = 0.0, mask = 0.0;
  for (int i = 1; i <= kAc1Plans; ++i) {
    planio::SynthSpec spec;
    spec.seed = static_cast<std::uint64_t>(i);
    const auto p = planio::synth_plan(spec);
    const auto walls = extraction::extract_walls(p.mask, cfg);
    vect += planio::mean_iou(planio::rasterize_walls(walls, p.mask.width(), p.mask.height()), p.clean_mask);
    mask += planio::mean_iou(p.mask, p.clean_mask);
  }
  vect /= kAc1Plans;
  mask /= kAc1Plans;

  double worst = 0.0;
  for (int i = 1; i <= kAc1TimedPlans; ++i) {
    planio::SynthSpec spec;
    spec.seed = static_cast<std::uint64_t>(100 + i);
    spec.canvas_width = spec.canvas_height = 1024;
    spec.n_rect_walls = 24;
    spec.wall_thickness_min_px = 12;
    spec.wall_thickness_max_px = 24;
    const auto p = planio::synth_plan(spec);
    const auto t0 = std::chrono::steady_clock::now();
    const auto walls = extraction::extract_walls(p.mask, cfg);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, s);
    if (walls.empty()) return {false, "no walls on a 1024x1024 plan"};
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "vectorized %.4f, mask %.4f, drop %.4f (max %.2f); 1024^2 worst %.3f s (max %.1f)",
                vect, mask, mask - vect, kAc1MaxDrop, worst, kAc1MaxSeconds);
  return {vect - mask >= -kAc1MaxDrop && worst < kAc1MaxSeconds, buf};
}

Outcome ac2() {
  const PipelineConfig cfg;
  int total = 0, exact = 0;
  for (int w = kAc2MinSide; w <= kAc2MaxSide; ++w) {
    for (int h = kAc2MinSide; h <= kAc2MaxSide; ++h) {
      ++total;
      const boxfit::Region r{BinaryMask(w, h, true), {7, 5}};
      const auto f = boxfit::shrink_fit(r, cfg);
      exact += f.size() == 1 && f[0] == boxfit::FitBox{7, 5, double(w), double(h), 1.0};
    }
  }
  return {exact == total, std::to_string(exact) + "/" + std::to_string(total) + " rectangles recovered exactly"};
}

Outcome ac3() {
  const PipelineConfig cfg;
  planio::SynthSpec spec;
  spec.seed = 1;
  spec.inclined_wing_deg = kAc3Angle;
  const auto p = planio::synth_plan(spec);
  const auto classes = extraction::detect_angles(p.mask, cfg);
  double best_err = 90.0;
  for (const auto& c : classes) {
    const double d = std::fmod(std::abs(c.angle_deg - kAc3Angle), 90.0);
    best_err = std::min(best_err, std::min(d, 90.0 - d));
  }
  std::vector<WallBox> truth, got;
  for (const auto& w : p.truth_walls) {
    if (std::find(p.wing_wall_ids.begin(), p.wing_wall_ids.end(), w.id) != p.wing_wall_ids.end()) truth.push_back(w);
  }
  for (const auto& w : extraction::extract_walls(p.mask, cfg)) {
    if (std::abs(w.frame_angle_deg - kAc3Angle) <= kAc3AngleTol) got.push_back(w);
  }
  const int W = p.mask.width(), H = p.mask.height();
  const double iou = oracle::iou(planio::rasterize_walls(got, W, H), planio::rasterize_walls(truth, W, H));
  char buf[160];
  std::snprintf(buf, sizeof buf, "angle error %.3f deg (max %.1f), wing IoU %.4f (min %.2f), %zu wing walls",
                best_err, kAc3AngleTol, iou, kAc3MinIou, got.size());
  return {!truth.empty() && best_err <= kAc3AngleTol && iou >= kAc3MinIou, buf};
}

Outcome ac4() {
  using boxfit::OverlapEvent;
  std::mt19937_64 rng(4004);
  int bad_disjoint = 0, bad_loss = 0, bad_total = 0, events = 0;
  for (int s = 0; s < kAc4Sets; ++s) {
    const int n = fixture::uniform(rng, 2, 8);
    std::vector<boxfit::FitBox> boxes;
    for (int k = 0; k < n; ++k) {
      boxes.push_back({double(fixture::uniform(rng, 0, 40)), double(fixture::uniform(rng, 0, 40)),
                       double(fixture::uniform(rng, 1, 24)), double(fixture::uniform(rng, 1, 24))});
    }
    const BinaryMask wall = fixture::random_mask(rng, 64, 64, std::uniform_real_distribution<double>(0.3, 1.0)(rng));
    const std::vector<boxfit::Region> regions{{wall, {0, 0}}};
    boxfit::OverlapReport rep;
    const auto out = boxfit::resolve_overlaps(boxes, regions, 3, &rep);
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = a + 1; b < out.size(); ++b) bad_disjoint += oracle::overlap_area(out[a], out[b]) != 0.0;
    std::int64_t sum = 0;
    for (const auto& e : rep.events) {
      ++events;
      sum += e.loss;
      if (e.action == OverlapEvent::Action::drop_contained) {
        bad_loss += e.loss != 0;
        continue;
      }
      const std::int64_t mine = oracle::min_trim_loss(wall, e.before_changed, e.before_other, 3);
      const std::int64_t theirs = oracle::min_trim_loss(wall, e.before_other, e.before_changed, 3);
      bad_loss += e.loss != mine || e.alternative_loss != theirs || mine > theirs;
    }
    bad_total += sum != rep.total_loss;
  }
  return {bad_disjoint == 0 && bad_loss == 0 && bad_total == 0,
          std::to_string(kAc4Sets) + " sets, " + std::to_string(events) + " events; overlapping pairs " +
              std::to_string(bad_disjoint) + ", loss mismatches " + std::to_string(bad_loss) +
              ", total mismatches " + std::to_string(bad_total)};
}

Outcome ac5() {
  std::mt19937_64 rng(5005);
  int mismatches = 0;
  for (int i = 0; i < kAc5Pairs; ++i) {
    const int w = fixture::uniform(rng, 1, 64), h = fixture::uniform(rng, 1, 64);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    const BinaryMask a = fixture::random_mask(rng, w, h, dens(rng)), b = fixture::random_mask(rng, w, h, dens(rng));
    mismatches += planio::mean_iou(a, b) != oracle::iou(a, b);
    if (!a.any()) continue;
    const boxfit::Region r = fixture::region_of(a, {fixture::uniform(rng, -5, 5), fixture::uniform(rng, -5, 5)});
    const boxfit::FitBox box{double(fixture::uniform(rng, -5, 60)), double(fixture::uniform(rng, -5, 60)),
                             double(fixture::uniform(rng, 1, 64)), double(fixture::uniform(rng, 1, 64))};
    mismatches += boxfit::region_box_iou(r, box) != oracle::region_box_iou(r, box);
  }
  return {mismatches == 0, std::to_string(kAc5Pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

bool closed(const recon::Mesh& m) {
  for (const auto& [edge, n] : oracle::edge_incidence(m.triangles))
    if (n != 2) return false;
  std::set<std::array<int, 3>> seen;
  for (auto t : m.triangles) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2] || !seen.insert(t).second) return false;
  }
  return true;
}

Outcome ac6() {
  const PipelineConfig cfg;
  const WallBox w{1, 0.0, 0, 0, 200, 10};
  auto mesh_with = [&](std::vector<OpeningSymbol> syms) {
    return recon::wall_mesh(recon::reconstruct(std::span(&w, 1), syms, cfg).scene.walls.at(0));
  };
  const recon::Mesh plain = mesh_with({});
  const recon::Mesh door = mesh_with({{OpeningKind::door, 80, 0, 50, 10}});
  const recon::Mesh window = mesh_with({{OpeningKind::window, 80, 0, 50, 10}});
  bool ok = plain.vertices.size() == 8 && plain.triangles.size() == 12 && door.vertices.size() == 16 &&
            door.triangles.size() == 28 && window.vertices.size() == 16 && window.triangles.size() == 32 &&
            closed(plain) && closed(door) && closed(window);

  // every wall of reconstructed synthetic plans
  int meshes = 3, open_meshes = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    planio::SynthSpec spec;
    spec.seed = seed;
    if (seed % 2 == 0) spec.inclined_wing_deg = 20.0 + static_cast<double>(seed);
    const auto p = planio::synth_plan(spec);
    const auto walls = extraction::extract_walls(p.mask, cfg);
    for (const auto& sw : recon::reconstruct(walls, p.truth_symbols, cfg).scene.walls) {
      ++meshes;
      open_meshes += !closed(recon::wall_mesh(sw));
    }
  }
  ok = ok && open_meshes == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "plain %zu/%zu, door %zu/%zu, window %zu/%zu (v/tri); %d meshes, %d not closed", plain.vertices.size(),
                plain.triangles.size(), door.vertices.size(), door.triangles.size(), window.vertices.size(),
                window.triangles.size(), meshes, open_meshes);
  return {ok, buf};
}

Outcome ac7() {
#ifdef PLANVEC_HAVE_CLI
  namespace fs = std::filesystem;
  const fs::path root = fs::current_path() / "acceptance_ac7";
  fs::remove_all(root);
  fs::create_directories(root);
  auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "planvec");
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  };
  const std::string in = (root / "in").string();
  if (run({"synth", "--seed", "17", "--count", "2", "--out", in}) != cli::kOk) {
    return {false, "synth failed"};
  }
  int compared = 0, differing = 0;
  for (const char* stem : {"0000", "0001"}) {
    for (const char* rep : {"a", "b"}) {
      const std::string out = (root / (std::string(rep) + stem)).string();
      if (run({"vectorize", "--mask", in + "/mask_" + stem + ".pgm", "--symbols", in + "/symbols_" + stem + ".json",
               "--out", out}) != cli::kOk ||
          run({"reconstruct", "--plan", out + "/plan.json", "--out", out}) != cli::kOk) {
        return {false, "pipeline failed"};
      }
    }
    for (const char* f : {"plan.json", "plan.svg", "model.obj", "model.json"}) {
      const std::string a = slurp(root / (std::string("a") + stem) / f), b = slurp(root / (std::string("b") + stem) / f);
      ++compared;
      differing += a.empty() || a != b;
    }
  }
  fs::remove_all(root);
  return {differing == 0, std::to_string(compared) + " outputs compared, " + std::to_string(differing) + " differ"};
#else
  return {false, "CLI not built (configure with PLANVEC_BUILD_TOOLS=ON)"};
#endif
}

Outcome ac8() {
  const PipelineConfig cfg;
  std::mt19937_64 rng(8008);
  int bad = 0, steps = 0;
  for (int i = 0; i < kAc8Components; ++i) {
    const int size = fixture::uniform(rng, 8, 48);
    const BinaryMask m = i % 2 ? fixture::random_blob(rng, size, size, fixture::uniform(rng, 5, 6 * size))
                               : fixture::random_rects(rng, size, size, fixture::uniform(rng, 1, 5), size / 2 + 1);
    const auto cs = raster::components(m);
    const auto& c = *std::max_element(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.area < b.area; });
    const boxfit::Region r{c.mask, {c.bbox.x, c.bbox.y}};
    const auto s = boxfit::shrink_box(r, cfg);
    bool ok = s.iterations == static_cast<int>(s.adopted_iou.size()) - 1 &&
              s.iterations <= r.mask.width() + r.mask.height();
    for (std::size_t k = 1; k < s.adopted_iou.size(); ++k) ok = ok && s.adopted_iou[k] > s.adopted_iou[k - 1];
    bad += !ok;
    steps += s.iterations;
  }
  return {bad == 0, std::to_string(kAc8Components) + " components, " + std::to_string(steps) + " adopted steps, " +
                        std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 vectorization fidelity", ac1}, {"AC2 exact recovery", ac2},    {"AC3 inclined wing", ac3},
      {"AC4 overlap resolution", ac4},     {"AC5 IoU oracle", ac5},        {"AC6 mesh validity", ac6},
      {"AC7 determinism", ac7},            {"AC8 shrink monotonicity", ac8}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

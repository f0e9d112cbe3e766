#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "planvec/planio.hpp"
#include "planvec/reconstruct.hpp"

using namespace planvec;
using namespace planvec::recon;

namespace {

struct ObjCounts {
  int vertices = 0;
  int faces = 0;
  std::vector<std::array<int, 3>> triangles;
};

ObjCounts parse_obj(const std::string& text) {
  ObjCounts c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++c.vertices;
    if (line.rfind("f ", 0) == 0) {
      ++c.faces;
      std::istringstream f(line.substr(2));
      std::array<int, 3> t{};
      f >> t[0] >> t[1] >> t[2];
      c.triangles.push_back(t);
    }
  }
  return c;
}

void check_closed(std::span<const std::array<int, 3>> tris) {
  for (const auto& [edge, n] : oracle::edge_incidence(tris)) CHECK(n == 2);
  std::set<std::array<int, 3>> unique;
  for (auto t : tris) {
    std::sort(t.begin(), t.end());
    CHECK(t[0] != t[1]);
    CHECK(t[1] != t[2]);
    unique.insert(t);
  }
  CHECK(unique.size() == tris.size());
}

SceneWall plain_wall(double length, double thickness, double height) {
  SceneWall w;
  w.id = 1;
  w.footprint = {{{0, 0}, {length, 0}, {length, -thickness}, {0, -thickness}}};
  w.height_m = height;
  return w;
}

Scene3D scene_of(SceneWall w) {
  Scene3D s;
  s.walls.push_back(std::move(w));
  return s;
}

}  // namespace

TEST_CASE("match_openings") {
  const std::vector<WallBox> walls{{1, 0.0, 0, 0, 100, 10}, {2, 0.0, 0, 10, 100, 10}};
  // rows 7..9 fall in wall 1 (3 x 20 = 60 px), row 10 in wall 2 (20 px)
  const std::vector<OpeningSymbol> symbols{{OpeningKind::door, 10, 7, 20, 4},
                                           {OpeningKind::window, 40, 2, 10, 5},
                                           {OpeningKind::window, 300, 300, 10, 10}};
  const MatchResult m = match_openings(walls, symbols);
  REQUIRE(m.matched.size() == 2);
  CHECK(m.matched[0].symbol_index == 0);
  CHECK(m.matched[0].wall_id == 1);
  CHECK(m.matched[1].wall_id == 1);
  CHECK(m.unmatched == std::vector<std::size_t>{2});

  // Equal overlap goes to the smaller id.
  const std::vector<WallBox> tie{{5, 0.0, 0, 0, 100, 10}, {3, 0.0, 0, 10, 100, 10}};
  const std::vector<OpeningSymbol> mid{{OpeningKind::door, 10, 8, 20, 4}};
  CHECK(match_openings(tie, mid).matched.at(0).wall_id == 3);

  // Brute-force overlap on random inputs.
  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    std::vector<WallBox> ws;
    for (int k = 0; k < 4; ++k) {
      ws.push_back({k + 1, double(fixture::uniform(rng, 0, 45)), double(fixture::uniform(rng, 0, 40)),
                    double(fixture::uniform(rng, 0, 40)), double(fixture::uniform(rng, 3, 40)),
                    double(fixture::uniform(rng, 3, 12))});
    }
    const OpeningSymbol s{OpeningKind::door, double(fixture::uniform(rng, 0, 50)), double(fixture::uniform(rng, 0, 50)),
                          double(fixture::uniform(rng, 1, 15)), double(fixture::uniform(rng, 1, 15))};
    std::int64_t best = 0;
    int best_id = 0;
    for (const auto& w : ws) {
      const raster::BinaryMask r = extraction::rasterize_wall(w, 120, 120);
      std::int64_t n = 0;
      for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 120; ++x) n += r.at(x, y) && oracle::center_in(s.x, s.y, s.w, s.h, x, y);
      if (n > best) {
        best = n;
        best_id = w.id;
      }
    }
    const MatchResult got = match_openings(ws, std::span(&s, 1));
    if (best == 0) {
      CHECK(got.unmatched.size() == 1);
    } else {
      REQUIRE(got.matched.size() == 1);
      CHECK(got.matched[0].wall_id == best_id);
    }
  }
}

TEST_CASE("fit_opening") {
  const PipelineConfig cfg;
  const WallBox h{1, 0.0, 10, 20, 200, 10};
  const Opening3D door = fit_opening({OpeningKind::door, 85, 18, 50, 14}, h, cfg);
  CHECK(door.width_m == doctest::Approx(1.0));
  CHECK(door.along_offset_m == doctest::Approx(1.5));
  CHECK(door.sill_m == 0.0);
  CHECK(door.height_m == doctest::Approx(2.0));
  CHECK(door.kind == OpeningKind::door);
  CHECK(door.wall_id == 1);

  const Opening3D win = fit_opening({OpeningKind::window, 190, 18, 40, 14}, h, cfg);
  CHECK(win.width_m == doctest::Approx(0.8));
  CHECK(win.along_offset_m + win.width_m == doctest::Approx(wall_length_m(h, cfg)));
  CHECK(win.sill_m == doctest::Approx(0.9));
  CHECK(win.height_m == doctest::Approx(1.2));

  const WallBox v{2, 0.0, 50, 10, 10, 150};
  const Opening3D vd = fit_opening({OpeningKind::door, 48, 40, 14, 60}, v, cfg);
  CHECK(vd.width_m == doctest::Approx(1.2));
  CHECK(vd.along_offset_m == doctest::Approx(0.6));

  // Tiny symbols grow to 0.1 m.
  CHECK(fit_opening({OpeningKind::window, 100, 20, 1, 1}, h, cfg).width_m == doctest::Approx(0.1));
  CHECK_THROWS_AS(fit_opening({OpeningKind::door, 0, 0, 5, 5}, WallBox{3, 0.0, 0, 0, 4, 3}, cfg), OpeningRejected);
}

TEST_CASE("build_scene") {
  const PipelineConfig cfg;
  CHECK(build_scene({}, {}, cfg).walls.empty());

  const std::vector<WallBox> one{{7, 0.0, 0, 0, 100, 10}};
  const Scene3D s = build_scene(one, {}, cfg);
  REQUIRE(s.walls.size() == 1);
  CHECK(s.walls[0].id == 7);
  CHECK(s.walls[0].length_m() == doctest::Approx(2.0));
  CHECK(s.walls[0].thickness_m() == doctest::Approx(0.2));
  CHECK(s.walls[0].height_m == doctest::Approx(2.5));
  CHECK(s.scale_m_per_px == 0.02);

  const std::vector<WallBox> long_wall{{1, 0.0, 0, 0, 200, 10}};
  const std::vector<Opening3D> doors{{1, OpeningKind::door, 0.5, 1.0, 0.0, 2.0},
                                     {1, OpeningKind::door, 1.0, 1.0, 0.0, 2.0}};
  const Scene3D merged = build_scene(long_wall, doors, cfg);
  REQUIRE(merged.walls[0].openings.size() == 1);
  CHECK(merged.walls[0].openings[0].along_offset_m == doctest::Approx(0.5));
  CHECK(merged.walls[0].openings[0].width_m == doctest::Approx(1.5));
}

TEST_CASE("property: merged openings match interval union") {
  const PipelineConfig cfg;
  const std::vector<WallBox> wall{{1, 0.0, 0, 0, 500, 10}};  // 10 m
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> a(0.1, 8.0), w(0.1, 1.5);
  for (int i = 0; i < 200; ++i) {
    std::vector<Opening3D> ops;
    std::vector<std::pair<double, double>> iv;
    const int n = fixture::uniform(rng, 1, 6);
    for (int k = 0; k < n; ++k) {
      const double off = a(rng), width = w(rng);
      ops.push_back({1, OpeningKind::door, off, width, 0.0, 2.0});
      iv.emplace_back(off, off + width);
    }
    const auto got = build_scene(wall, ops, cfg).walls[0].openings;
    const auto want = oracle::merge_intervals(iv);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].along_offset_m == doctest::Approx(want[k].first));
      CHECK(got[k].along_offset_m + got[k].width_m == doctest::Approx(want[k].second));
    }
  }
}

TEST_CASE("export_obj") {
  const std::string empty = export_obj(Scene3D{});
  CHECK(parse_obj(empty).vertices == 0);
  CHECK(parse_obj(empty).faces == 0);
  CHECK(empty.rfind("#", 0) == 0);
  CHECK(export_obj(Scene3D{}, "abc").find("abc") != std::string::npos);

  const ObjCounts box = parse_obj(export_obj(scene_of(plain_wall(2.0, 0.2, 2.5))));
  CHECK(box.vertices == 8);
  CHECK(box.faces == 12);
  check_closed(box.triangles);

  SceneWall dw = plain_wall(4.0, 0.2, 2.5);
  dw.openings.push_back({1, OpeningKind::door, 1.0, 1.0, 0.0, 2.0});
  const ObjCounts door = parse_obj(export_obj(scene_of(dw)));
  CHECK(door.vertices == 16);
  CHECK(door.faces == 28);
  check_closed(door.triangles);

  SceneWall ww = plain_wall(4.0, 0.2, 2.5);
  ww.openings.push_back({1, OpeningKind::window, 1.0, 1.0, 0.9, 1.2});
  const ObjCounts win = parse_obj(export_obj(scene_of(ww)));
  CHECK(win.vertices == 16);
  CHECK(win.faces == 32);
  check_closed(win.triangles);
}

TEST_CASE("property: wall meshes are closed") {
  const PipelineConfig cfg;
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> ang(0.0, 90.0);
  for (int i = 0; i < 100; ++i) {
    const WallBox w{i, ang(rng), double(fixture::uniform(rng, 0, 100)), double(fixture::uniform(rng, 0, 100)),
                    double(fixture::uniform(rng, 60, 300)), double(fixture::uniform(rng, 4, 12))};
    std::vector<Opening3D> ops;
    const int n = fixture::uniform(rng, 0, 4);
    for (int k = 0; k < n; ++k) {
      const OpeningSymbol s{k % 2 ? OpeningKind::window : OpeningKind::door, 0, 0, 0, 0};
      Opening3D o = fit_opening(s, w, cfg);
      const double len = wall_length_m(w, cfg);
      o.width_m = std::uniform_real_distribution<double>(0.1, std::min(1.5, len))(rng);
      o.along_offset_m = std::uniform_real_distribution<double>(0.0, len - o.width_m)(rng);
      ops.push_back(o);
    }
    const Scene3D s = build_scene(std::span(&w, 1), ops, cfg);
    const Mesh m = wall_mesh(s.walls[0]);
    check_closed(m.triangles);
    const ObjCounts obj = parse_obj(export_obj(s));
    CHECK(obj.vertices == static_cast<int>(m.vertices.size()));
    CHECK(obj.faces == static_cast<int>(m.triangles.size()));
    for (const auto& o : s.walls[0].openings) {
      CHECK(o.along_offset_m >= 0.0);
      CHECK(o.along_offset_m + o.width_m <= s.walls[0].length_m() + 1e-9);
      CHECK(o.sill_m >= 0.0);
      CHECK(o.sill_m + o.height_m <= s.walls[0].height_m + 1e-9);
    }
  }
}

TEST_CASE("semantic json") {
  CHECK(export_semantic_json(Scene3D{}) == R"({"unit":"m","scale":0.02,"walls":[]})");

  const PipelineConfig cfg;
  const std::vector<WallBox> walls{{1, 0.0, 0, 0, 200, 10}};
  const std::vector<OpeningSymbol> syms{{OpeningKind::window, 90, 0, 40, 10}};
  const Scene3D s = reconstruct(walls, syms, cfg).scene;
  const std::string doc = export_semantic_json(s);
  const auto j = nlohmann::json::parse(doc);
  REQUIRE(j["walls"].size() == 1);
  REQUIRE(j["walls"][0]["openings"].size() == 1);
  CHECK(j["walls"][0]["openings"][0]["kind"] == "window");
  CHECK(export_semantic_json(import_semantic_json(doc)) == doc);

  CHECK_THROWS_AS(import_semantic_json("{"), SceneFormatError);
  CHECK_THROWS_AS(import_semantic_json(R"({"unit":"m","scale":0.02})"), SceneFormatError);
}

TEST_CASE("property: reconstruction of synthetic plans") {
  const PipelineConfig cfg;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    planio::SynthSpec spec;
    spec.seed = seed;
    const auto plan = planio::synth_plan(spec);
    const Reconstruction r = reconstruct(plan.truth_walls, plan.truth_symbols, cfg);
    const std::string doc = export_semantic_json(r.scene);
    CHECK(export_semantic_json(import_semantic_json(doc)) == doc);
    for (const auto& w : r.scene.walls) {
      check_closed(wall_mesh(w).triangles);
      for (const auto& o : w.openings) {
        CHECK(o.along_offset_m >= 0.0);
        CHECK(o.along_offset_m + o.width_m <= w.length_m() + 1e-9);
        CHECK(o.sill_m + o.height_m <= w.height_m + 1e-9);
      }
    }
  }
}

TEST_CASE("property: planar geometry scales with the pixel scale") {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> ang(0.0, 90.0), kd(0.5, 4.0);
  for (int i = 0; i < 100; ++i) {
    const WallBox w{1, ang(rng), double(fixture::uniform(rng, 0, 100)), double(fixture::uniform(rng, 0, 100)),
                    double(fixture::uniform(rng, 150, 300)), double(fixture::uniform(rng, 4, 12))};
    // symbol centered mid-wall, wide enough that no clamp is active
    const auto c = w.corners();
    const double cx = 0.25 * (c[0].x + c[1].x + c[2].x + c[3].x), cy = 0.25 * (c[0].y + c[1].y + c[2].y + c[3].y);
    const OpeningSymbol s{OpeningKind::door, cx - 20, cy - 20, 40, 40};
    PipelineConfig a, b;
    const double k = kd(rng);
    b.pixel_scale_m_per_px = a.pixel_scale_m_per_px * k;
    const Scene3D sa = reconstruct(std::span(&w, 1), std::span(&s, 1), a).scene;
    const Scene3D sb = reconstruct(std::span(&w, 1), std::span(&s, 1), b).scene;
    for (int p = 0; p < 4; ++p) {
      CHECK(sb.walls[0].footprint[p].x == doctest::Approx(k * sa.walls[0].footprint[p].x).epsilon(1e-12));
      CHECK(sb.walls[0].footprint[p].y == doctest::Approx(k * sa.walls[0].footprint[p].y).epsilon(1e-12));
    }
    CHECK(sb.walls[0].height_m == sa.walls[0].height_m);
    REQUIRE(sa.walls[0].openings.size() == 1);
    REQUIRE(sb.walls[0].openings.size() == 1);
    const Opening3D &oa = sa.walls[0].openings[0], &ob = sb.walls[0].openings[0];
    CHECK(ob.along_offset_m == doctest::Approx(k * oa.along_offset_m).epsilon(1e-12));
    CHECK(ob.width_m == doctest::Approx(k * oa.width_m).epsilon(1e-12));
    CHECK(ob.sill_m == oa.sill_m);
    CHECK(ob.height_m == oa.height_m);
  }
}

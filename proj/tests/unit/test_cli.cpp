#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"
#include "planvec/planio.hpp"
#include "planvec/reconstruct.hpp"

namespace fs = std::filesystem;
using namespace planvec;
using raster::BinaryMask;

namespace {

// Fresh directory that is also the working directory while alive.
class Sandbox {
 public:
  explicit Sandbox(const std::string& name) : prev_(fs::current_path()), dir_(fs::current_path() / ("cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::current_path(dir_);
  }
  ~Sandbox() { fs::current_path(prev_); }
  Sandbox(const Sandbox&) = delete;
  Sandbox& operator=(const Sandbox&) = delete;

 private:
  fs::path prev_, dir_;
};

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "planvec");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

void write_mask(const fs::path& p, const BinaryMask& m) { spit(p, fixture::bytes_to_string(planio::save_pgm(m))); }

int files_in(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<int>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

BinaryMask plan_mask() {
  return fixture::rect_mask(120, 100, {{10, 10, 100, 8}, {10, 10, 8, 80}, {10, 82, 100, 8}, {102, 10, 8, 80}});
}

}  // namespace

TEST_CASE("exit codes") {
  Sandbox box("exit");
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"bogus"}).code == cli::kInputError);
  CHECK(run({"vectorize", "--out", "x"}).code == cli::kInputError);
  CHECK(run({"--help"}).code == cli::kOk);

  const Result missing = run({"vectorize", "--mask", "nope.pgm", "--out", "o"});
  CHECK(missing.code == cli::kInputError);
  CHECK(missing.err.find("nope.pgm") != std::string::npos);

  spit("corrupt.pgm", "P5\n10 10\n255\nabc");
  CHECK(run({"vectorize", "--mask", "corrupt.pgm", "--out", "o"}).code == cli::kInputError);
  spit("bad.json", "{\"nope\": 1}");
  write_mask("m.pgm", plan_mask());
  CHECK(run({"vectorize", "--mask", "m.pgm", "--config", "bad.json", "--out", "o"}).code == cli::kInputError);
  CHECK(run({"reconstruct", "--plan", "bad.json", "--out", "o"}).code == cli::kInputError);
}

TEST_CASE("vectorize") {
  Sandbox box("vectorize");
  write_mask("m.pgm", plan_mask());
  const Result r = run({"vectorize", "--mask", "m.pgm", "--out", "out"});
  REQUIRE(r.code == cli::kOk);
  const auto plan = planio::plan_from_json(slurp("out/plan.json"));
  CHECK(plan.source_width == 120);
  CHECK(plan.source_height == 100);
  CHECK(plan.walls.size() == 4);
  CHECK(plan.symbols.empty());
  CHECK(slurp("out/plan.svg").find("<svg") != std::string::npos);
  const auto m = nlohmann::json::parse(slurp("out/manifest.json"));
  CHECK(m["config_hash"] == config_hash(PipelineConfig{}));
  CHECK(m["config_source"] == "defaults");
  CHECK(m["counts"]["walls"] == 4);
  CHECK(m["timings_ms"].contains("extract"));

  const std::vector<OpeningSymbol> syms{{OpeningKind::door, 40, 8, 20, 12, 0.875}};
  spit("s.json", planio::symbols_to_json(syms));
  REQUIRE(run({"vectorize", "--mask", "m.pgm", "--symbols", "s.json", "--out", "out2"}).code == cli::kOk);
  CHECK(planio::plan_from_json(slurp("out2/plan.json")).symbols == syms);

  write_mask("empty.pgm", BinaryMask(64, 64));
  REQUIRE(run({"vectorize", "--mask", "empty.pgm", "--out", "out3"}).code == cli::kOk);
  CHECK(planio::plan_from_json(slurp("out3/plan.json")).walls.empty());
  CHECK(slurp("out3/manifest.json").find("no walls extracted") != std::string::npos);

  // ./planvec.json is picked up when --config is absent.
  spit("planvec.json", R"({"wall_height_m": 3.0})");
  REQUIRE(run({"vectorize", "--mask", "m.pgm", "--out", "out4"}).code == cli::kOk);
  CHECK(nlohmann::json::parse(slurp("out4/manifest.json"))["config_source"] == "planvec.json");
}

TEST_CASE("reconstruct") {
  Sandbox box("reconstruct");
  planio::PlanVectorization plan{200, 100, {{1, 0.0, 0, 0, 200, 10}}, {}, {}};
  plan.symbols = {{OpeningKind::door, 90, 0, 50, 10}};
  spit("one.json", planio::plan_to_json(plan));
  REQUIRE(run({"reconstruct", "--plan", "one.json", "--out", "a"}).code == cli::kOk);
  const std::string obj = slurp("a/model.obj");
  int v = 0, f = 0;
  std::istringstream in(obj);
  for (std::string line; std::getline(in, line);) {
    v += line.rfind("v ", 0) == 0;
    f += line.rfind("f ", 0) == 0;
  }
  CHECK(v == 16);
  CHECK(f == 28);
  CHECK(obj.find(config_hash(PipelineConfig{})) != std::string::npos);
  const auto scene = recon::import_semantic_json(slurp("a/model.json"));
  REQUIRE(scene.walls.size() == 1);
  CHECK(scene.walls[0].openings.size() == 1);

  spit("none.json", planio::plan_to_json({50, 50, {}, {}, {}}));
  REQUIRE(run({"reconstruct", "--plan", "none.json", "--out", "b"}).code == cli::kOk);
  CHECK(slurp("b/model.obj").find("\nv ") == std::string::npos);
  CHECK(recon::import_semantic_json(slurp("b/model.json")).walls.empty());

  plan.symbols.push_back({OpeningKind::window, 150, 60, 20, 10});
  spit("stray.json", planio::plan_to_json(plan));
  REQUIRE(run({"reconstruct", "--plan", "stray.json", "--out", "c"}).code == cli::kOk);
  const auto m = nlohmann::json::parse(slurp("c/manifest.json"));
  CHECK(m["unmatched_symbols"] == nlohmann::json::array({1}));
}

TEST_CASE("evaluate") {
  Sandbox box("evaluate");
  const BinaryMask a = fixture::rect_mask(30, 30, {{5, 5, 10, 10}});
  write_mask("a.pgm", a);
  write_mask("b.pgm", fixture::rect_mask(30, 30, {{10, 5, 10, 10}}));
  write_mask("small.pgm", BinaryMask(20, 20));

  const Result same = run({"evaluate", "--pred-mask", "a.pgm", "--gt-mask", "a.pgm"});
  CHECK(same.code == cli::kOk);
  CHECK(same.out == "{\"mask_iou\":1.0}\n");

  const Result shifted = run({"evaluate", "--pred-mask", "b.pgm", "--gt-mask", "a.pgm"});
  REQUIRE(shifted.code == cli::kOk);
  const double iou = nlohmann::json::parse(shifted.out)["mask_iou"].get<double>();
  CHECK(std::abs(iou - 1.0 / 3.0) <= 1e-9);

  spit("plan.json", planio::plan_to_json({30, 30, {{1, 0.0, 5, 5, 10, 10}}, {}, {}}));
  CHECK(run({"evaluate", "--plan", "plan.json", "--gt-mask", "a.pgm"}).out == "{\"vectorized_iou\":1.0}\n");
  const Result both = run({"evaluate", "--pred-mask", "b.pgm", "--plan", "plan.json", "--gt-mask", "a.pgm", "--crop"});
  const auto j = nlohmann::json::parse(both.out);
  CHECK(j.contains("mask_iou"));
  CHECK(j["vectorized_iou"] == 1.0);

  CHECK(run({"evaluate", "--pred-mask", "small.pgm", "--gt-mask", "a.pgm"}).code == cli::kInputError);
  CHECK(run({"evaluate", "--gt-mask", "a.pgm"}).code == cli::kInputError);
}

TEST_CASE("synth") {
  Sandbox box("synth");
  REQUIRE(run({"synth", "--seed", "7", "--count", "2", "--out", "a"}).code == cli::kOk);
  CHECK(files_in("a") == 6);
  for (const char* name : {"mask_0000.pgm", "truth_0000.json", "symbols_0000.json", "mask_0001.pgm"}) {
    CHECK(fs::exists(fs::path("a") / name));
  }
  REQUIRE(run({"synth", "--seed", "7", "--count", "2", "--jobs", "2", "--out", "b"}).code == cli::kOk);
  for (const auto& e : fs::directory_iterator("a")) {
    CHECK(slurp(e.path()) == slurp(fs::path("b") / e.path().filename()));
  }
  CHECK(slurp("a/mask_0000.pgm") != slurp("a/mask_0001.pgm"));
  const auto truth = planio::plan_from_json(slurp("a/truth_0000.json"));
  CHECK(planio::load_symbols(slurp("a/symbols_0000.json")) == truth.symbols);

  REQUIRE(run({"synth", "--seed", "7", "--count", "0", "--out", "zero"}).code == cli::kOk);
  CHECK(files_in("zero") == 0);

  spit("bad.json", R"({"canvas_width": 10})");
  CHECK(run({"synth", "--spec", "bad.json", "--out", "c"}).code == cli::kInputError);
  spit("crowded.json", R"({"canvas_width": 64, "canvas_height": 64, "n_rect_walls": 60})");
  CHECK(run({"synth", "--spec", "crowded.json", "--out", "d"}).code == cli::kInputError);
  CHECK(run({"synth", "--count", "-1", "--out", "e"}).code == cli::kInputError);
}

TEST_CASE("property: vectorize and reconstruct are deterministic") {
  Sandbox box("determinism");
  REQUIRE(run({"synth", "--seed", "3", "--count", "1", "--out", "in"}).code == cli::kOk);
  for (const char* out : {"r1", "r2"}) {
    REQUIRE(run({"vectorize", "--mask", "in/mask_0000.pgm", "--symbols", "in/symbols_0000.json", "--out", out})
                .code == cli::kOk);
    REQUIRE(run({"reconstruct", "--plan", std::string(out) + "/plan.json", "--out", out}).code == cli::kOk);
  }
  for (const char* f : {"plan.json", "plan.svg", "model.obj", "model.json"}) {
    CHECK(slurp(fs::path("r1") / f) == slurp(fs::path("r2") / f));
    CHECK_FALSE(slurp(fs::path("r1") / f).empty());
  }
}

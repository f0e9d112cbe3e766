#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "planvec/config.hpp"
#include "planvec/extraction.hpp"
#include "planvec/planio.hpp"
#include "planvec/reconstruct.hpp"

namespace planvec::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Bad or missing user input; maps to kInputError.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("cannot write " + path.string());
}

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir);
}

raster::BinaryMask read_mask(const std::string& path) {
  const std::string bytes = read_file(path);
  return planio::load_mask(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

struct ResolvedConfig {
  PipelineConfig cfg;
  std::string source;  // path, or "defaults"
};

// --config, else ./planvec.json, else built-in defaults.
ResolvedConfig resolve_config(const std::string& flag) {
  if (!flag.empty()) return {config_from_json(read_file(flag)), flag};
  if (fs::is_regular_file("planvec.json")) return {config_from_json(read_file("planvec.json")), "planvec.json"};
  return {PipelineConfig{}, "defaults"};
}

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

ordered_json manifest_base(const char* command, const ResolvedConfig& rc) {
  ordered_json m;
  m["tool"] = "planvec";
  m["version"] = PLANVEC_VERSION;
  m["command"] = command;
  m["config_hash"] = config_hash(rc.cfg);
  m["config_source"] = rc.source;
  return m;
}

// --- subcommands -------------------------------------------------------------

struct VectorizeArgs {
  std::string mask, symbols, config, out;
};

int cmd_vectorize(const VectorizeArgs& a, std::ostream& out) {
  Stopwatch clock;
  ordered_json timings;
  const ResolvedConfig rc = resolve_config(a.config);
  const raster::BinaryMask mask = read_mask(a.mask);
  std::vector<OpeningSymbol> symbols;
  if (!a.symbols.empty()) symbols = planio::load_symbols(read_file(a.symbols));
  make_dir(a.out);
  timings["load"] = clock.lap_ms();

  extraction::ExtractionReport report;
  planio::PlanVectorization plan;
  plan.source_width = mask.width();
  plan.source_height = mask.height();
  plan.walls = extraction::extract_walls(mask, rc.cfg, &report);
  plan.symbols = std::move(symbols);
  if (plan.walls.empty()) plan.diagnostics.push_back("no walls extracted");
  timings["extract"] = clock.lap_ms();

  const fs::path dir(a.out);
  write_file(dir / "plan.json", planio::plan_to_json(plan));
  write_file(dir / "plan.svg", planio::emit_svg(plan));
  timings["write"] = clock.lap_ms();

  ordered_json m = manifest_base("vectorize", rc);
  m["inputs"] = {{"mask", a.mask}};
  if (!a.symbols.empty()) m["inputs"]["symbols"] = a.symbols;
  m["outputs"] = {(dir / "plan.json").string(), (dir / "plan.svg").string(), (dir / "manifest.json").string()};
  m["counts"] = {{"walls", plan.walls.size()}, {"symbols", plan.symbols.size()}};
  m["timings_ms"] = timings;
  ordered_json diag = plan.diagnostics;
  for (const auto& it : report.iterations) {
    char line[160];
    std::snprintf(line, sizeof line, "angle %.2f: %zu boxes, %zu components deferred, %zu -> %zu px remaining",
                  it.angle_deg, it.boxes_accepted, it.components_deferred, it.remaining_before, it.remaining_after);
    diag.push_back(line);
  }
  m["diagnostics"] = diag;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  out << "vectorize: " << plan.walls.size() << " walls -> " << a.out << "\n";
  return kOk;
}

struct ReconstructArgs {
  std::string plan, config, out;
};

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  Stopwatch clock;
  ordered_json timings;
  const ResolvedConfig rc = resolve_config(a.config);
  const planio::PlanVectorization plan = planio::plan_from_json(read_file(a.plan));
  make_dir(a.out);
  timings["load"] = clock.lap_ms();

  const recon::Reconstruction r = recon::reconstruct(plan.walls, plan.symbols, rc.cfg);
  timings["reconstruct"] = clock.lap_ms();

  const fs::path dir(a.out);
  const std::string hash = config_hash(rc.cfg);
  write_file(dir / "model.obj", recon::export_obj(r.scene, hash));
  write_file(dir / "model.json", recon::export_semantic_json(r.scene) + "\n");
  timings["write"] = clock.lap_ms();

  std::size_t openings = 0;
  for (const auto& w : r.scene.walls) openings += w.openings.size();
  ordered_json m = manifest_base("reconstruct", rc);
  m["inputs"] = {{"plan", a.plan}};
  m["outputs"] = {(dir / "model.obj").string(), (dir / "model.json").string(), (dir / "manifest.json").string()};
  m["counts"] = {{"walls", r.scene.walls.size()}, {"symbols", plan.symbols.size()}, {"openings", openings}};
  m["unmatched_symbols"] = r.unmatched_symbols;
  m["timings_ms"] = timings;
  m["diagnostics"] = r.diagnostics;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  out << "reconstruct: " << r.scene.walls.size() << " walls, " << openings << " openings, "
      << r.unmatched_symbols.size() << " unmatched -> " << a.out << "\n";
  return kOk;
}

struct EvaluateArgs {
  std::string pred_mask, plan, gt_mask;
  bool crop = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.pred_mask.empty() && a.plan.empty()) throw InputError("evaluate needs --pred-mask or --plan");
  const raster::BinaryMask gt = read_mask(a.gt_mask);

  auto score = [&](const raster::BinaryMask& pred) {
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
      throw InputError("prediction is " + std::to_string(pred.width()) + "x" + std::to_string(pred.height()) +
                       " but ground truth is " + std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    }
    if (!a.crop) return planio::mean_iou(pred, gt);
    const auto c = planio::crop_to_extent(pred, gt);
    return planio::mean_iou(c.image, c.gt);
  };

  planio::MetricsReport report;
  if (!a.pred_mask.empty()) report.mask_iou = score(read_mask(a.pred_mask));
  if (!a.plan.empty()) {
    const auto plan = planio::plan_from_json(read_file(a.plan));
    report.vectorized_iou = score(planio::rasterize_walls(plan.walls, plan.source_width, plan.source_height));
  }
  out << planio::metrics_to_json(report) << "\n";
  return kOk;
}

struct SynthArgs {
  std::uint64_t seed = 1;
  int count = 1;
  int jobs = 1;
  std::string spec, out;
};

std::uint64_t plan_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (a.count < 0) throw InputError("--count must be >= 0");
  if (a.jobs < 1) throw InputError("--jobs must be >= 1");
  const planio::SynthSpec base = a.spec.empty() ? planio::SynthSpec{} : planio::synth_spec_from_json(read_file(a.spec));
  base.validate();
  if (a.count == 0) return kOk;
  make_dir(a.out);

  const fs::path dir(a.out);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (int i = next++; i < a.count; i = next++) {
      try {
        planio::SynthSpec spec = base;
        spec.seed = plan_seed(a.seed, static_cast<std::uint64_t>(i));
        const planio::SynthPlan p = planio::synth_plan(spec);
        char stem[32];
        std::snprintf(stem, sizeof stem, "%04d", i);
        const auto pgm = planio::save_pgm(p.mask);
        write_file(dir / (std::string("mask_") + stem + ".pgm"),
                   std::string_view(reinterpret_cast<const char*>(pgm.data()), pgm.size()));
        planio::PlanVectorization truth;
        truth.source_width = p.mask.width();
        truth.source_height = p.mask.height();
        truth.walls = p.truth_walls;
        truth.symbols = p.truth_symbols;
        write_file(dir / (std::string("truth_") + stem + ".json"), planio::plan_to_json(truth));
        write_file(dir / (std::string("symbols_") + stem + ".json"), planio::symbols_to_json(p.truth_symbols) + "\n");
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = a.count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(a.jobs, a.count); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  out << "synth: " << a.count << " plans -> " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wall-mask vectorization and 3D reconstruction", "planvec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PLANVEC_VERSION);

  VectorizeArgs va;
  auto* vectorize = app.add_subcommand("vectorize", "Extract wall boxes from a wall mask");
  vectorize->add_option("--mask", va.mask, "Wall mask (PGM P5 or PNG)")->required();
  vectorize->add_option("--symbols", va.symbols, "Door/window symbols JSON");
  vectorize->add_option("--config", va.config, "Pipeline config JSON");
  vectorize->add_option("--out", va.out, "Output directory")->required();

  ReconstructArgs ra;
  auto* reconstruct = app.add_subcommand("reconstruct", "Build the 3D model of a vectorized plan");
  reconstruct->add_option("--plan", ra.plan, "plan.json from vectorize")->required();
  reconstruct->add_option("--config", ra.config, "Pipeline config JSON");
  reconstruct->add_option("--out", ra.out, "Output directory")->required();

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "IoU of a mask and/or a plan against a ground-truth mask");
  evaluate->add_option("--pred-mask", ea.pred_mask, "Predicted wall mask");
  evaluate->add_option("--plan", ea.plan, "plan.json to rasterize");
  evaluate->add_option("--gt-mask", ea.gt_mask, "Ground-truth wall mask")->required();
  evaluate->add_flag("--crop", ea.crop, "Crop to the ground-truth extent first");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate synthetic plans with ground truth");
  synth->add_option("--seed", sa.seed, "Base seed");
  synth->add_option("--count", sa.count, "Number of plans");
  synth->add_option("--spec", sa.spec, "Synth spec JSON");
  synth->add_option("--out", sa.out, "Output directory")->required();
  synth->add_option("--jobs", sa.jobs, "Worker threads");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*vectorize) return cmd_vectorize(va, out);
    if (*reconstruct) return cmd_reconstruct(ra, out);
    if (*evaluate) return cmd_evaluate(ea, out);
    if (*synth) return cmd_synth(sa, out);
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const planio::ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const planio::UnsupportedFormat& e) {
    err << "error: " << e.what() << "\n";
  } catch (const planio::FormatError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const planio::SynthError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const recon::SceneFormatError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (...) {
    err << "internal error\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace planvec::cli

#include <benchmark/benchmark.h>

#include <random>

#include "planvec/boxfit.hpp"
#include "planvec/extraction.hpp"
#include "planvec/planio.hpp"
#include "planvec/reconstruct.hpp"

using namespace planvec;

namespace {

planio::SynthPlan plan_of_size(int size) {
  planio::SynthSpec spec;
  spec.seed = 42;
  spec.canvas_width = spec.canvas_height = size;
  if (size >= 1024) {
    spec.n_rect_walls = 24;
    spec.wall_thickness_min_px = 12;
    spec.wall_thickness_max_px = 24;
  }
  return planio::synth_plan(spec);
}

void BM_ExtractWalls(benchmark::State& state) {
  const auto plan = plan_of_size(static_cast<int>(state.range(0)));
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extraction::extract_walls(plan.mask, cfg));
}
BENCHMARK(BM_ExtractWalls)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ExtractWallsInclined(benchmark::State& state) {
  planio::SynthSpec spec;
  spec.seed = 42;
  spec.inclined_wing_deg = 30.0;
  const auto plan = planio::synth_plan(spec);
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extraction::extract_walls(plan.mask, cfg));
}
BENCHMARK(BM_ExtractWallsInclined)->Unit(benchmark::kMillisecond);

void BM_Preprocess(benchmark::State& state) {
  const auto plan = plan_of_size(static_cast<int>(state.range(0)));
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extraction::preprocess(plan.mask, cfg));
}
BENCHMARK(BM_Preprocess)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DetectAngles(benchmark::State& state) {
  const auto plan = plan_of_size(static_cast<int>(state.range(0)));
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extraction::detect_angles(plan.mask, cfg));
}
BENCHMARK(BM_DetectAngles)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ShrinkFit(benchmark::State& state) {
  // L-shaped component with a ragged edge
  const int n = static_cast<int>(state.range(0));
  raster::BinaryMask m(n, n);
  m.fill_rect({0, 0, n, n / 8});
  m.fill_rect({0, 0, n / 8, n});
  std::mt19937_64 rng(7);
  for (int x = 0; x < n; ++x) m.set(x, n / 8, rng() % 2 == 0);
  const boxfit::Region region{m, {0, 0}};
  const PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(boxfit::shrink_fit(region, cfg));
}
BENCHMARK(BM_ShrinkFit)->Arg(64)->Arg(256);

void BM_ResolveOverlaps(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pos(0, 200), len(3, 60);
  std::vector<boxfit::FitBox> boxes;
  for (int i = 0; i < state.range(0); ++i) {
    boxes.push_back({double(pos(rng)), double(pos(rng)), double(len(rng)), double(len(rng))});
  }
  const std::vector<boxfit::Region> regions{{raster::BinaryMask(260, 260, true), {0, 0}}};
  for (auto _ : state) benchmark::DoNotOptimize(boxfit::resolve_overlaps(boxes, regions, 3));
}
BENCHMARK(BM_ResolveOverlaps)->Arg(16)->Arg(64);

void BM_ReconstructExport(benchmark::State& state) {
  const auto plan = plan_of_size(256);
  const PipelineConfig cfg;
  for (auto _ : state) {
    const auto r = recon::reconstruct(plan.truth_walls, plan.truth_symbols, cfg);
    benchmark::DoNotOptimize(recon::export_obj(r.scene));
    benchmark::DoNotOptimize(recon::export_semantic_json(r.scene));
  }
}
BENCHMARK(BM_ReconstructExport)->Unit(benchmark::kMicrosecond);

void BM_MeanIou(benchmark::State& state) {
  const auto plan = plan_of_size(1024);
  for (auto _ : state) benchmark::DoNotOptimize(planio::mean_iou(plan.mask, plan.clean_mask));
}
BENCHMARK(BM_MeanIou)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

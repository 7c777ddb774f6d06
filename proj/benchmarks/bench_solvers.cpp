#include <filesystem>
#include <string>

#include <benchmark/benchmark.h>

#include "dcloc/dca.hpp"
#include "dcloc/inner_solver.hpp"
#include "dcloc/io.hpp"
#include "dcloc/oracle.hpp"

namespace {

using dcloc::ProblemInstance;
using dcloc::Vector;

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(DCLOC_FIXTURE_DIR) / name;
}

ProblemInstance city_instance(dcloc::PointShape shape) {
  ProblemInstance inst;
  inst.dimension = 2;
  inst.attractions = dcloc::load_points_csv(fixture("cities_group_a.csv"),
                                            dcloc::SetRole::kAttraction, shape, 1.0);
  inst.repulsions = dcloc::load_points_csv(fixture("cities_group_b.csv"),
                                           dcloc::SetRole::kRepulsion, shape, 1.0);
  inst.constraint = dcloc::ConvexSet::ball(Vector{{30.0, -160.0}}, 30.0);
  return inst;
}

// One inner subproblem of the city instance, linearized at the ball center.
void BM_WeiszfeldCityInner(benchmark::State& state) {
  const auto inst = city_instance(dcloc::PointShape::point());
  const Vector x0 = Vector{{30.0, -160.0}};
  const Vector y = dcloc::repulsion_subgradient(inst, 1.0, x0);
  const dcloc::InnerProblem prob{y, 1.0, inst.attractions, &inst.constraint};
  dcloc::InnerConfig cfg;
  cfg.method = dcloc::InnerMethod::kWeiszfeld;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcloc::weiszfeld_solve(prob, x0, cfg));
  }
}
BENCHMARK(BM_WeiszfeldCityInner)->Unit(benchmark::kMillisecond);

void BM_DcaCity(benchmark::State& state) {
  const auto shape =
      state.range(0) == 0 ? dcloc::PointShape::point() : dcloc::PointShape::square(5.0);
  const auto inst = city_instance(shape);
  const Vector x0 = Vector{{30.0, -160.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcloc::dca_solve(inst, x0, {}));
  }
  state.SetLabel(state.range(0) == 0 ? "points" : "squares");
}
BENCHMARK(BM_DcaCity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GridStrip(benchmark::State& state) {
  const auto inst = dcloc::load_instance(fixture("strip_between_halfplanes.json")).instance;
  const dcloc::GridSpec grid{Vector{{-10.0, -10.0}}, Vector{{10.0, 10.0}},
                             static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcloc::grid_search(inst, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GridStrip)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler build, so the entry point is defined here.
BENCHMARK_MAIN();

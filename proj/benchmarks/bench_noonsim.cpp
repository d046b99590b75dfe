#include <benchmark/benchmark.h>

#include "noonsim/correlation.hpp"
#include "noonsim/grid.hpp"
#include "noonsim/mode_basis.hpp"
#include "noonsim/wavepackets.hpp"

namespace noonsim {
namespace {

// Run with: ./build/benchmarks/noonsim_bench

struct Fixture {
  Grid grid = Grid::centered_line(400, 4.0);
  ModeBasis basis = solve_modes(build_operators(PermittivityMap(grid)), default_omega_floor(grid));
  Projection left = project_packet(
      basis, packet_profile({{-1.0, 0.0}, {1.0, 0.0}, 40.0, 4.0, 0.0}, grid));
  Projection right = project_packet(
      basis, packet_profile({{1.0, 0.0}, {-1.0, 0.0}, 40.0, 4.0, 0.0}, grid));
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_SolveModes(benchmark::State& state) {
  const Grid grid = Grid::centered_line(static_cast<int>(state.range(0)), 4.0);
  const auto ops = build_operators(PermittivityMap(grid));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_modes(ops, default_omega_floor(grid)));
  }
}
BENCHMARK(BM_SolveModes)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_ProjectPacket(benchmark::State& state) {
  const auto& f = fixture();
  const auto profile = packet_profile({{-1.0, 0.0}, {1.0, 0.0}, 40.0, 4.0, 0.0}, f.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_packet(f.basis, profile));
  }
}
BENCHMARK(BM_ProjectPacket);

void BM_ClosedFormCf(benchmark::State& state) {
  const auto& f = fixture();
  const int n = static_cast<int>(state.range(0));
  const NoonStateSpec st{n, f.left.amplitudes, f.right.amplitudes, 0.4};
  const DetectorSpec a{f.grid.nearest_cell(-0.3), 1.0, "z", n / 2};
  const DetectorSpec b{f.grid.nearest_cell(0.3), 1.0, "z", n / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(noon_cf(f.basis, st, a, b));
  }
}
BENCHMARK(BM_ClosedFormCf)->Arg(2)->Arg(4)->Arg(8);

void BM_WickOracleCf(benchmark::State& state) {
  const auto& f = fixture();
  const int n = static_cast<int>(state.range(0));
  const NoonStateSpec st{n, f.left.amplitudes, f.right.amplitudes, 0.4};
  const DetectorSpec a{f.grid.nearest_cell(-0.3), 1.0, "z", n / 2};
  const DetectorSpec b{f.grid.nearest_cell(0.3), 1.0, "z", n / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(noon_cf_oracle(f.basis, st, a, b));
  }
}
BENCHMARK(BM_WickOracleCf)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace noonsim

BENCHMARK_MAIN();

// Copyright 2026 The thermoqbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include <benchmark/benchmark.h>

#include "thermoqbe/experiment.hpp"
#include "thermoqbe/units.hpp"

using namespace thermoqbe;

namespace {

struct Problem {
    SimulationGrid grid = SimulationGrid::make(1.0, 401, 5.0, 101, units::fs_to_internal(100.0), 51);
    TemperatureProfile profile{300.0, 2.0, 5.0};
    double mu = solve_chemical_potential(0.04, 300.0, 0.5, grid.p);
    EquilibriumField eq = build_equilibrium(profile, mu, 0.5, grid.p, grid.x);
    KernelEvaluator evaluator{PhononBath{}, OnShell{0.5, mu}};
    KernelSet kernels = build_kernels(evaluator, grid.p, grid.x, profile, eq);

    SeparatedProblem separated() const
    {
        return {grid, kernels, eq, ExternalField{-1e7}, resolve_reference(grid, std::sqrt(mu), 2.5)};
    }
};

const Problem& problem()
{
    static const Problem p;
    return p;
}

void BM_KernelPoint(benchmark::State& state)
{
    const auto& p = problem();
    for (auto _ : state)
        benchmark::DoNotOptimize(p.evaluator.evaluate(0.13, 300.0));
}
BENCHMARK(BM_KernelPoint);

void BM_BuildKernels(benchmark::State& state)
{
    const auto& p = problem();
    for (auto _ : state)
        benchmark::DoNotOptimize(build_kernels(p.evaluator, p.grid.p, p.grid.x, p.profile, p.eq,
                                               {false, 1.0, static_cast<unsigned>(state.range(0))}));
}
BENCHMARK(BM_BuildKernels)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FixedPoint(benchmark::State& state)
{
    const auto problem_ = problem().separated();
    for (auto _ : state)
        benchmark::DoNotOptimize(fixed_point_solve(problem_));
}
BENCHMARK(BM_FixedPoint)->Unit(benchmark::kMillisecond);

void BM_Residual(benchmark::State& state)
{
    const auto& p = problem();
    const auto sp = p.separated();
    const auto solution = fixed_point_solve(sp);
    const auto f = assemble(solution);
    const auto h = hole_field(f);
    for (auto _ : state)
        benchmark::DoNotOptimize(residual(f, h, p.grid, p.kernels, p.eq, sp.field));
}
BENCHMARK(BM_Residual)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

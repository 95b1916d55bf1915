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

#pragma once

/// @file
/// Config-driven runs and temperature sweeps, plus their file outputs.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "thermoqbe/config.hpp"
#include "thermoqbe/errors.hpp"
#include "thermoqbe/local_equilibrium.hpp"
#include "thermoqbe/observables.hpp"
#include "thermoqbe/scattering_kernels.hpp"
#include "thermoqbe/sov_solver.hpp"
#include "thermoqbe/thermal_potentials.hpp"

namespace thermoqbe {

/// A hard solver failure during a sweep, tagged with the offending T0.
class RunError : public Error {
public:
    RunError(double T0, const std::string& what) : Error(what), T0_(T0) {}
    double T0() const noexcept { return T0_; }

private:
    double T0_;
};

struct RunReport {
    double T0 = 0.0;
    double mu = 0.0;
    double p_fermi = 0.0;
    ReferencePoint ref;
    double lambda0 = 0.0;
    double lambda = 0.0;
    std::vector<double> lambda_history;
    int iterations = 0;
    double last_change = 0.0;
    ResidualNorms residual;
    double residual_threshold = 0.0;
    KernelDiagnostics kernels;
    SolutionFlags flags;
    double wall_seconds = 0.0;
    std::vector<std::string> interpretation_flags;

    bool residual_ok() const noexcept { return residual.l2 < residual_threshold; }
};

/// A single run with every intermediate field retained.
struct RunResult {
    SimulationGrid grid;
    TemperatureProfile profile;
    EquilibriumField equilibrium;
    OnShell band;
    KernelSet kernels;
    SeparatedSolution solution;
    Field3D f;
    Field3D f_hole;
    ThermalPotentials potentials;
    ObservableProfiles observables;
    RunReport report;
};

/// Solves one T0 of the configuration. `workers` parallelises the kernel build.
/// Throws ConfigError for an invalid config, SolverError on hard solver failure.
RunResult run_single(const RunConfig& config, double T0, unsigned workers = 1);

struct TrendVerdict {
    std::string name;
    bool enabled = true;
    bool passed = true;
    std::string detail;
};

struct SweepResult {
    std::vector<RunResult> runs; ///< sorted by T0
    std::vector<TrendVerdict> trends;
    bool all_converged = true;
    bool trends_passed = true;
};

/// Runs every T0 with up to `workers` concurrent runs; results are
/// independent of the worker count. Throws RunError on the first hard
/// failure (lowest T0).
SweepResult run_sweep(const RunConfig& config, unsigned workers = 1);

/// Trend checks across a finished sweep.
std::vector<TrendVerdict> evaluate_trends(const RunConfig& config, const std::vector<RunResult>& runs);

/// "300" for 300 K, "250.5" for 250.5 K.
std::string temperature_tag(double T0);

/// profiles_T<T0>.csv, avec_T<T0>.csv, report_T<T0>.json (and the optional
/// p-resolved kernel*f' dump) for one run.
void write_run_outputs(const RunResult& run, const RunConfig& config, const std::filesystem::path& dir);

void write_sweep_summary(const SweepResult& sweep, const RunConfig& config, const std::filesystem::path& dir);

/// Doubles are written with 17 significant digits.
std::string format_double(double value);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int solver_error = 3;
inline constexpr int trend_failure = 4;
inline constexpr int not_converged = 5;
} // namespace exit_code

} // namespace thermoqbe

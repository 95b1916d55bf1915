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

#include "thermoqbe/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/parallel.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

namespace {

using json = nlohmann::ordered_json;

} // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

std::string temperature_tag(double T0)
{
    std::string s = fmt::format("{}", T0);
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

RunResult run_single(const RunConfig& config, double T0, unsigned workers)
{
    const auto start = std::chrono::steady_clock::now();
    try {
        auto grid = SimulationGrid::make(config.p_max, config.n_p, config.length_nm, config.n_x,
                                         units::fs_to_internal(config.t_max_fs), config.n_t);
        TemperatureProfile profile(T0, config.gradient_k_per_nm, config.length_nm);
        const double mu = config.mu_eV ? *config.mu_eV
                                       : solve_chemical_potential(config.density_n0, T0, config.mass, grid.p);
        if (!(mu > 0.0))
            throw DomainError(fmt::format("chemical potential {} eV is not positive; no Fermi momentum", mu));
        const double p_fermi = std::sqrt(2.0 * config.mass * mu);
        grid.require_fermi_coverage(p_fermi);

        auto equilibrium = build_equilibrium(profile, mu, config.mass, grid.p, grid.x);
        const OnShell band{config.mass, mu};
        const KernelEvaluator evaluator(PhononBath(config.bath), band, config.quadrature);
        auto kernels = build_kernels(evaluator, grid.p, grid.x, profile, equilibrium,
                                     {config.corrections_enabled, config.correction_prefactor, workers});

        const auto ref = resolve_reference(grid, config.solver.p_ref.value_or(p_fermi),
                                           config.solver.x_ref.value_or(0.5 * config.length_nm));
        SolverOptions options = config.solver;
        if (!config.mu_eV)
            options.target_density = config.density_n0;
        const SeparatedProblem problem{grid, kernels, equilibrium, ExternalField{config.field_V_per_m}, ref};
        auto solution = fixed_point_solve(problem, options);

        auto f = assemble(solution);
        auto f_hole = hole_field(f);
        auto potentials = extract_potentials(kernels, f, equilibrium, grid.x, grid.t, ref.ip);
        auto observables =
            compute_observables(kernels, f, f_hole, grid.p, band, ref.ip, config.snapshot_t_index,
                                {T0, config.gradient_k_per_nm, config.field_V_per_m, ref.p});

        RunReport report;
        report.T0 = T0;
        report.mu = mu;
        report.p_fermi = p_fermi;
        report.ref = ref;
        report.lambda0 = solution.lambda_history.front();
        report.lambda = solution.lambda;
        report.lambda_history = solution.lambda_history;
        report.iterations = solution.iterations;
        report.last_change = solution.last_change;
        report.residual = solution.residual;
        report.residual_threshold = config.residual_threshold;
        report.kernels = kernels.diagnostics;
        report.flags = solution.flags;
        report.interpretation_flags = interpretation_flags(config);
        report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        return RunResult{std::move(grid),        std::move(profile),     std::move(equilibrium),
                         band,                   std::move(kernels),     std::move(solution),
                         std::move(f),           std::move(f_hole),      std::move(potentials),
                         std::move(observables), std::move(report)};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw RunError(T0, fmt::format("T0 = {} K: {}", T0, e.what()));
    }
}

SweepResult run_sweep(const RunConfig& config, unsigned workers)
{
    if (auto bad = validate(config); !bad.empty())
        throw ConfigError(std::move(bad));

    auto temps = config.T0_kelvin;
    std::sort(temps.begin(), temps.end());
    const unsigned outer = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(temps.size())));
    const unsigned inner = std::max(1u, workers / outer);

    std::vector<std::optional<RunResult>> slots(temps.size());
    parallel_for(temps.size(), outer, [&](std::size_t i) { slots[i] = run_single(config, temps[i], inner); });

    SweepResult sweep;
    for (auto& s : slots) {
        sweep.all_converged = sweep.all_converged && s->solution.flags.converged;
        sweep.runs.push_back(std::move(*s));
    }
    sweep.trends = evaluate_trends(config, sweep.runs);
    sweep.trends_passed =
        std::all_of(sweep.trends.begin(), sweep.trends.end(), [](const auto& t) { return !t.enabled || t.passed; });
    return sweep;
}

namespace {

// Strict increase in x, tolerating breaks only within `allowed` nodes of either end.
TrendVerdict increasing_in_x(std::string name, bool enabled, const std::vector<double>& y, double fraction,
                             double T0)
{
    TrendVerdict v{std::move(name), enabled, true, {}};
    const std::size_t n = y.size();
    const auto allowed = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
    std::size_t breaks = 0;
    std::size_t interior_breaks = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (y[i + 1] > y[i])
            continue;
        ++breaks;
        if (!first)
            first = i;
        if (i >= allowed && i + 1 + allowed < n)
            ++interior_breaks;
    }
    v.passed = interior_breaks == 0 && breaks <= allowed;
    v.detail = fmt::format("T0 = {} K: {} non-increasing steps of {} ({} allowed at the boundaries)", T0, breaks,
                           n > 0 ? n - 1 : 0, allowed);
    if (first)
        v.detail += fmt::format(", first at node {}", *first);
    return v;
}

TrendVerdict monotone_in_T0(std::string name, bool enabled, const std::vector<RunResult>& runs,
                            const std::vector<double> ObservableProfiles::*field, bool magnitude)
{
    TrendVerdict v{std::move(name), enabled, true, {}};
    if (runs.size() < 2) {
        v.detail = "needs at least two temperatures; not evaluated";
        return v;
    }
    std::size_t failures = 0;
    std::string first;
    for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
        const auto& lo = runs[r].observables.*field;
        const auto& hi = runs[r + 1].observables.*field;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double a = magnitude ? std::abs(lo[i]) : lo[i];
            const double b = magnitude ? std::abs(hi[i]) : hi[i];
            if (b > a)
                continue;
            ++failures;
            if (first.empty())
                first = fmt::format(", first at T0 = {} vs {} K, node {}", runs[r + 1].report.T0, runs[r].report.T0, i);
        }
    }
    v.passed = failures == 0;
    v.detail = fmt::format("{} pointwise violations across {} temperature pairs{}", failures, runs.size() - 1, first);
    return v;
}

} // namespace

std::vector<TrendVerdict> evaluate_trends(const RunConfig& config, const std::vector<RunResult>& runs)
{
    std::vector<TrendVerdict> out;
    const auto& ch = config.checks;
    out.push_back(monotone_in_T0("damping_force_magnitude_increasing_in_T0", ch.damping_monotone_in_T0, runs,
                                 &ObservableProfiles::f_damp, true));
    out.push_back(monotone_in_T0("thermal_current_increasing_in_T0", ch.thermal_current_monotone_in_T0, runs,
                                 &ObservableProfiles::j_q, false));
    if (runs.empty()) {
        out.push_back({"current_increasing_in_x", ch.current_increasing_in_x, true, "no runs"});
        out.push_back({"density_increasing_in_x", ch.density_increasing_in_x, true, "no runs"});
        return out;
    }
    // Spatial trends are read off the hottest run of the sweep.
    const auto& hot = *std::max_element(runs.begin(), runs.end(),
                                        [](const auto& a, const auto& b) { return a.report.T0 < b.report.T0; });
    out.push_back(increasing_in_x("current_increasing_in_x", ch.current_increasing_in_x, hot.observables.j,
                                  ch.boundary_exception_fraction, hot.report.T0));
    out.push_back(increasing_in_x("density_increasing_in_x", ch.density_increasing_in_x, hot.observables.n,
                                  ch.boundary_exception_fraction, hot.report.T0));
    return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

json report_json(const RunReport& r)
{
    json j;
    j["T0_kelvin"] = r.T0;
    j["mu_eV"] = r.mu;
    j["p_fermi"] = r.p_fermi;
    j["reference"] = {{"p", r.ref.p}, {"x_nm", r.ref.x}, {"ip", r.ref.ip}, {"ix", r.ref.ix}, {"t", 0.0}};
    j["lambda0"] = r.lambda0;
    j["lambda"] = r.lambda;
    j["lambda_history"] = r.lambda_history;
    j["iterations"] = r.iterations;
    j["last_change"] = r.last_change;
    j["converged"] = r.flags.converged;
    j["residual"] = {{"l2", r.residual.l2}, {"max", r.residual.max}, {"threshold", r.residual_threshold},
                     {"below_threshold", r.residual_ok()}};
    j["kernel_diagnostics"] = {{"max_imag_ratio_A", r.kernels.max_imag_ratio_A},
                               {"max_imag_ratio_B", r.kernels.max_imag_ratio_B},
                               {"max_imag_ratio_E", r.kernels.max_imag_ratio_E},
                               {"max_richardson", r.kernels.max_richardson}};
    const auto& d = r.flags.denominator;
    j["flags"] = {{"growing", r.flags.growing},
                  {"bounds_ok", r.flags.bounds_ok},
                  {"min_f", r.flags.min_f},
                  {"max_f", r.flags.max_f},
                  {"min_ratio_to_equilibrium", r.flags.min_ratio_to_equilibrium},
                  {"max_ratio_to_equilibrium", r.flags.max_ratio_to_equilibrium},
                  {"singular_denominator_nodes", d.singular_nodes},
                  {"clamped_denominator_nodes", d.clamped_nodes},
                  {"first_singular_p", d.first_singular_p ? json(*d.first_singular_p) : json(nullptr)}};
    j["wall_seconds"] = r.wall_seconds;
    j["interpretation_flags"] = r.interpretation_flags;
    return j;
}

} // namespace

void write_run_outputs(const RunResult& run, const RunConfig& config, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const auto tag = temperature_tag(run.report.T0);
    const auto& obs = run.observables;
    const std::size_t k = obs.evaluated_at;

    {
        auto out = open_out(dir / fmt::format("profiles_T{}.csv", tag));
        out << "x_nm,f_damp,n,j,j_q,phi\n";
        for (std::size_t ix = 0; ix < run.grid.x.size(); ++ix)
            out << format_double(run.grid.x[ix]) << ',' << format_double(obs.f_damp[ix]) << ','
                << format_double(obs.n[ix]) << ',' << format_double(obs.j[ix]) << ',' << format_double(obs.j_q[ix])
                << ',' << format_double(run.potentials.phi(ix, k)) << '\n';
    }
    {
        auto out = open_out(dir / fmt::format("avec_T{}.csv", tag));
        out << "t,a_vec\n";
        const std::size_t ix = run.solution.ref.ix;
        for (std::size_t it = 0; it < run.grid.t.size(); ++it)
            out << format_double(units::internal_to_fs(run.grid.t[it])) << ','
                << format_double(run.potentials.a_vec(ix, it)) << '\n';
    }
    if (config.emit_p_resolved) {
        auto out = open_out(dir / fmt::format("kernel_fprime_T{}.csv", tag));
        out << "p,x_nm,A_fprime\n";
        for (std::size_t ip = 0; ip < run.grid.p.size(); ++ip)
            for (std::size_t ix = 0; ix < run.grid.x.size(); ++ix)
                out << format_double(run.grid.p[ip]) << ',' << format_double(run.grid.x[ix]) << ','
                    << format_double(run.kernels.A(ip, ix) * run.f_hole(ip, ix, k)) << '\n';
    }
    {
        auto out = open_out(dir / fmt::format("report_T{}.json", tag));
        out << report_json(run.report).dump(2) << '\n';
    }
}

void write_sweep_summary(const SweepResult& sweep, const RunConfig& config, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    json j;
    j["all_converged"] = sweep.all_converged;
    j["trends_passed"] = sweep.trends_passed;
    json trends = json::array();
    for (const auto& t : sweep.trends)
        trends.push_back({{"name", t.name},
                          {"enabled", t.enabled},
                          {"verdict", !t.enabled ? "skipped" : (t.passed ? "pass" : "fail")},
                          {"detail", t.detail}});
    j["trends"] = trends;
    json runs = json::array();
    for (const auto& r : sweep.runs)
        runs.push_back({{"T0_kelvin", r.report.T0},
                        {"converged", r.report.flags.converged},
                        {"iterations", r.report.iterations},
                        {"lambda", r.report.lambda},
                        {"lambda_relative_change", r.solution.lambda_relative_change()},
                        {"residual_l2", r.report.residual.l2},
                        {"residual_ok", r.report.residual_ok()},
                        {"bounds_ok", r.report.flags.bounds_ok},
                        {"profiles", fmt::format("profiles_T{}.csv", temperature_tag(r.report.T0))}});
    j["runs"] = runs;
    j["interpretation_flags"] = interpretation_flags(config);
    auto out = open_out(dir / "sweep_summary.json");
    out << j.dump(2) << '\n';
}

} // namespace thermoqbe

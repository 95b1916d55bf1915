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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "thermoqbe/experiment.hpp"
#include "thermoqbe/thermal_potentials.hpp"

using namespace thermoqbe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

const RunConfig& config()
{
    static const RunConfig c = fixtures::fig1();
    return c;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double sweep_seconds = 0.0;

const SweepResult& sweep()
{
    static const SweepResult s = [] {
        const auto start = std::chrono::steady_clock::now();
        auto r = run_sweep(config(), workers());
        sweep_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }();
    return s;
}

const RunResult& hottest() { return sweep().runs.back(); }

double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

double max_diff(const Field2D& a, const Field2D& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

// Strictly increasing apart from at most floor(1% of n) steps, all at the ends.
Outcome increasing_in_x(const std::vector<double>& y, const char* what)
{
    const std::size_t n = y.size();
    const auto allowed = static_cast<std::size_t>(0.01 * static_cast<double>(n));
    std::size_t breaks = 0, interior = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (y[i + 1] > y[i])
            continue;
        ++breaks;
        if (i >= allowed && i + 1 + allowed < n)
            ++interior;
    }
    return {interior == 0 && breaks <= allowed,
            fmt::format("{}: {} non-increasing steps ({} allowed at the ends)", what, breaks, allowed)};
}

Outcome criterion_damping_trend()
{
    const auto& runs = sweep().runs;
    std::size_t bad = 0;
    for (std::size_t r = 0; r + 1 < runs.size(); ++r)
        for (std::size_t i = 0; i < runs[r].observables.f_damp.size(); ++i)
            bad += !(std::abs(runs[r + 1].observables.f_damp[i]) > std::abs(runs[r].observables.f_damp[i]));
    return {runs.size() == 3 && bad == 0 && sweep_seconds < 120.0,
            fmt::format("|f_damp| ordered 300 > 250 > 200 K, {} pointwise violations; sweep took {:.1f} s", bad,
                        sweep_seconds)};
}

Outcome criterion_x_trends()
{
    const auto& obs = hottest().observables;
    const auto j = increasing_in_x(obs.j, "j");
    const auto n = increasing_in_x(obs.n, "n");
    return {hottest().report.T0 == 300.0 && j.passed && n.passed, j.detail + "; " + n.detail};
}

Outcome criterion_heat_current_trend()
{
    const auto& runs = sweep().runs;
    std::size_t bad = 0;
    for (std::size_t r = 0; r + 1 < runs.size(); ++r)
        for (std::size_t i = 0; i < runs[r].observables.j_q.size(); ++i)
            bad += !(runs[r + 1].observables.j_q[i] > runs[r].observables.j_q[i]);
    return {bad == 0, fmt::format("j_q increasing in T0, {} pointwise violations", bad)};
}

Outcome criterion_kernel_oracle()
{
    const auto& run = hottest();
    const KernelEvaluator ev(PhononBath(config().bath), run.band, config().quadrature);
    const double pF = run.report.p_fermi;
    const std::size_t fine = 10 * config().quadrature.intervals;
    double worst = 0.0;
    for (double s : {-0.75, 0.4, 1.1, 1.5, 2.5}) {
        const double p = s * pF;
        const auto o = oracle::brute_force_kernels(config().bath, run.band.mass, run.band.mu, p, 300.0, fine);
        const double a = ev.damping_A(p, 300.0).value;
        const double b = ev.relaxation_B(p, 300.0).value;
        const double e = ev.gain_E(p).value;
        worst = std::max({worst, std::abs(a - o.A) / std::abs(o.A), std::abs(b - o.B) / std::abs(o.B),
                          std::abs(e - o.E) / std::abs(o.E)});
    }
    return {worst < 1e-3, fmt::format("max relative deviation from {}-interval oracle: {:.3e}", fine, worst)};
}

Outcome criterion_gauge()
{
    const auto& run = hottest();
    const auto& x = run.grid.x;
    const auto& t = run.grid.t;
    const auto base = reconstructed_force(run.potentials, x, t);
    const double scale = max_abs(base.data());
    const double c = 0.37;
    const std::vector<GaugeFunction> chis{
        {[c](double, double) { return c; }, [](double, double) { return 0.0; }},
        {[](double, double) { return 0.0; }, [c](double, double) { return c; }},
        {[](double x_, double) { return x_; }, [](double, double t_) { return t_; }},
    };
    double worst = 0.0;
    for (const auto& chi : chis)
        worst = std::max(worst, max_diff(reconstructed_force(gauge_transform(run.potentials, chi, x, t), x, t), base) /
                                    scale);
    return {worst <= 1e-10, fmt::format("max relative change of da/dt + dphi/dx: {:.3e}", worst)};
}

double free_streaming_residual(std::size_t refine)
{
    const double mass = 0.5;
    const std::size_t np = 20 * refine + 1, nx = 40 * refine + 1, nt = 20 * refine + 1;
    const auto grid = SimulationGrid::make(1.0, np, 5.0, nx, 2.0, nt);
    const TemperatureProfile profile(300.0, 2.0, 5.0);
    const auto eq = build_equilibrium(profile, 0.02, mass, grid.p, grid.x);
    auto bath = config().bath;
    bath.coupling_g2 = 0.0;
    const auto ks = build_kernels(KernelEvaluator(PhononBath(bath), OnShell{mass, 0.02}), grid.p, grid.x, profile, eq);
    Field3D f(np, nx, nt);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            for (std::size_t k = 0; k < nt; ++k) {
                const double s = grid.x[j] - grid.p[i] / mass * grid.t[k] - 2.5;
                f(i, j, k) = 0.5 * std::exp(-s * s) * (1.0 + 0.3 * std::cos(grid.p[i]));
            }
    return residual(f, hole_field(f), grid, ks, eq, ExternalField{0.0}).l2;
}

Outcome criterion_free_streaming()
{
    const double r1 = free_streaming_residual(1), r2 = free_streaming_residual(2), r4 = free_streaming_residual(4);
    return {r1 / r2 >= 3.5 && r2 / r4 >= 3.5,
            fmt::format("residual l2 {:.3e} -> {:.3e} -> {:.3e}, ratios {:.2f}, {:.2f}", r1, r2, r4, r1 / r2, r2 / r4)};
}

Outcome criterion_hole_complement()
{
    std::size_t bad = 0, total = 0, runs = 0;
    for (const auto& run : sweep().runs) {
        if (!run.report.flags.converged)
            continue;
        ++runs;
        for (std::size_t i = 0; i < run.f.data().size(); ++i, ++total) {
            const double f = run.f.data()[i], h = run.f_hole.data()[i];
            bad += !(h == 1.0 - f && f + h == 1.0);
        }
    }
    return {runs == sweep().runs.size() && bad == 0,
            fmt::format("{} of {} nodes violate f + f' = 1 over {} converged runs", bad, total, runs)};
}

Outcome criterion_fixed_point()
{
    bool ok = true;
    std::string detail;
    for (const auto& run : sweep().runs) {
        const auto& r = run.report;
        ok = ok && r.flags.converged && r.last_change < 1e-6 && r.residual_ok();
        detail += fmt::format("{}T0 = {} K: {} iterations, lambda = {:.6e}, last change {:.1e}, residual {:.3e} (< {})",
                              detail.empty() ? "" : "; ", r.T0, r.iterations, r.lambda, r.last_change, r.residual.l2,
                              r.residual_threshold);
    }
    return {ok, detail};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_determinism()
{
    const auto root = fs::temp_directory_path() / fmt::format("thermoqbe_acceptance_{}", ::getpid());
    fs::remove_all(root);
    std::vector<std::string> names;
    for (unsigned w : {1u, 4u}) {
        const auto s = run_sweep(config(), w);
        for (const auto& run : s.runs)
            write_run_outputs(run, config(), root / fmt::format("w{}", w));
    }
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(root / "w1")) {
        if (entry.path().extension() != ".csv")
            continue;
        ++files;
        differing += slurp(entry.path()) != slurp(root / "w4" / entry.path().filename());
    }
    fs::remove_all(root);
    return {files > 0 && differing == 0, fmt::format("{} of {} CSV files differ between 1 and 4 workers", differing, files)};
}

double split_error(const RunResult& run)
{
    const auto rec = reconstructed_force(run.potentials, run.grid.x, run.grid.t);
    const auto target = damping_force_field(run.kernels, run.f_hole, run.solution.ref.ip);
    return max_diff(rec, target) / max_abs(target.data());
}

Outcome criterion_split()
{
    auto c = fixtures::single(300.0);
    const double e1 = split_error(hottest());
    c.n_x = 2 * (c.n_x - 1) + 1;
    c.n_t = 2 * (c.n_t - 1) + 1;
    const double e2 = split_error(run_single(c, 300.0, workers()));
    return {e1 < 1e-3 && e1 / e2 >= 3.5,
            fmt::format("max relative mismatch {:.3e} on the default grid, {:.3e} with x and t refined 2x (ratio {:.2f})",
                        e1, e2, e1 / e2)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"damping force grows with T0", criterion_damping_trend},
        {"current and density increase in x", criterion_x_trends},
        {"heat current grows with T0", criterion_heat_current_trend},
        {"kernels match fine quadrature", criterion_kernel_oracle},
        {"gauge invariance", criterion_gauge},
        {"free streaming is second order", criterion_free_streaming},
        {"hole complement exact", criterion_hole_complement},
        {"fixed point converges", criterion_fixed_point},
        {"CSV output deterministic", criterion_determinism},
        {"potential split reconstructs damping force", criterion_split},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        failures += !o.passed;
        fmt::print("{} {:2}  {}: {}\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

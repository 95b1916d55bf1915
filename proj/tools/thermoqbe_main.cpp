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

#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "thermoqbe/config.hpp"
#include "thermoqbe/errors.hpp"
#include "thermoqbe/experiment.hpp"
#include "thermoqbe/parallel.hpp"

namespace {

using namespace thermoqbe;

void print_config_error(const ConfigError& e)
{
    fmt::print(stderr, "thermoqbe: invalid configuration\n");
    for (const auto& v : e.violations())
        fmt::print(stderr, "  - {}\n", v);
}

int cmd_validate(const std::string& path)
{
    const auto config = load_config(path);
    fmt::print("{}", describe(config));
    fmt::print("\n; interpretation flags\n");
    for (const auto& f : interpretation_flags(config))
        fmt::print(";   {}\n", f);
    return exit_code::ok;
}

int cmd_run(const std::string& path, const std::string& output, unsigned workers)
{
    const auto config = load_config(path);
    const std::filesystem::path dir = output.empty() ? config.output_dir : std::filesystem::path(output);

    SweepResult sweep;
    try {
        sweep = run_sweep(config, workers);
    } catch (const RunError& e) {
        fmt::print(stderr, "thermoqbe: solver error at T0 = {} K\n  {}\n", e.T0(), e.what());
        return exit_code::solver_error;
    }
    for (const auto& run : sweep.runs)
        write_run_outputs(run, config, dir);
    write_sweep_summary(sweep, config, dir);

    fmt::print("{:>8}  {:>9}  {:>5}  {:>12}  {:>12}  {}\n", "T0[K]", "converged", "iters", "lambda", "residual_l2",
               "bounds");
    for (const auto& run : sweep.runs) {
        const auto& r = run.report;
        fmt::print("{:>8}  {:>9}  {:>5}  {:>12.5e}  {:>12.5e}  {}\n", r.T0, r.flags.converged ? "yes" : "no",
                   r.iterations, r.lambda, r.residual.l2, r.flags.bounds_ok ? "ok" : "flagged");
    }
    for (const auto& t : sweep.trends)
        fmt::print("{:<44} {:<7} {}\n", t.name, !t.enabled ? "skipped" : (t.passed ? "pass" : "FAIL"), t.detail);
    fmt::print("outputs in {}\n", dir.string());

    if (!sweep.all_converged)
        return exit_code::not_converged;
    if (!sweep.trends_passed)
        return exit_code::trend_failure;
    return exit_code::ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Separated-variable solver for the damped quantum Boltzmann equation in a temperature gradient"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    unsigned workers = 0;

    auto* run = app.add_subcommand("run", "solve every T0 in the sweep and write profiles and reports");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_option("--output,-o", output, "output directory (overrides output.dir)");
    run->add_option("--workers,-j", workers, "worker threads (default: THERMOQBE_WORKERS or hardware)")
        ->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "print the resolved configuration without running");
    validate_cmd->add_option("config", config_path, "configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_code::ok : exit_code::config_error;
    }

    try {
        if (*validate_cmd)
            return cmd_validate(config_path);
        if (workers == 0)
            workers = workers_from_env(std::max(1u, std::thread::hardware_concurrency()));
        return cmd_run(config_path, output, workers);
    } catch (const ConfigError& e) {
        print_config_error(e);
        return exit_code::config_error;
    } catch (const std::exception& e) {
        fmt::print(stderr, "thermoqbe: {}\n", e.what());
        return exit_code::solver_error;
    }
}

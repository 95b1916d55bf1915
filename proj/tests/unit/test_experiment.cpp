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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "thermoqbe/errors.hpp"
#include "thermoqbe/experiment.hpp"

using namespace thermoqbe;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(fs::temp_directory_path() / fmt::format("thermoqbe_{}_{}", name, ::getpid()))
    {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args, const fs::path& log)
{
    const int status = std::system(fmt::format("\"{}\" {} > \"{}\" 2>&1", THERMOQBE_CLI, args, log.string()).c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const SweepResult& fig1_sweep()
{
    static const SweepResult s = run_sweep(fixtures::fig1(), 3);
    return s;
}

} // namespace

TEST(Format, TemperatureTag)
{
    EXPECT_EQ(temperature_tag(300.0), "300");
    EXPECT_EQ(temperature_tag(77.5), "77p5");
}

TEST(Format, DoublesRoundTrip)
{
    fixtures::Gen gen(3);
    for (int i = 0; i < 200; ++i) {
        const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.uniform(-300.0, 300.0));
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Sweep, SortedAndConverged)
{
    const auto& s = fig1_sweep();
    ASSERT_EQ(s.runs.size(), 3u);
    EXPECT_EQ(s.runs[0].report.T0, 200.0);
    EXPECT_EQ(s.runs[2].report.T0, 300.0);
    for (const auto& r : s.runs) {
        EXPECT_TRUE(r.report.flags.converged);
        EXPECT_TRUE(r.report.residual_ok()) << r.report.residual.l2;
    }
}

TEST(Sweep, DefaultTrendsHold)
{
    const auto& s = fig1_sweep();
    ASSERT_EQ(s.trends.size(), 4u);
    for (const auto& t : s.trends) {
        EXPECT_TRUE(t.enabled) << t.name;
        EXPECT_TRUE(t.passed) << t.name << ": " << t.detail;
    }
}

TEST(Sweep, TrendsNeedTwoTemperatures)
{
    const auto& s = fig1_sweep();
    const std::vector<RunResult> one{s.runs.back()};
    const auto v = evaluate_trends(fixtures::fig1(), one);
    for (const auto& t : v)
        EXPECT_TRUE(t.passed) << t.name;
}

TEST(Sweep, DampingTrendDetectsReversal)
{
    const auto& s = fig1_sweep();
    auto runs = s.runs;
    std::swap(runs[0].observables, runs[2].observables);
    const auto v = evaluate_trends(fixtures::fig1(), runs);
    EXPECT_FALSE(v[0].passed);
}

TEST(Sweep, RejectsInvalidConfig)
{
    auto c = fixtures::fig1();
    c.T0_kelvin = {0.0};
    EXPECT_THROW(run_sweep(c, 1), ConfigError);
}

TEST(Sweep, RunErrorNamesTemperature)
{
    auto c = fixtures::single(300.0);
    c.quadrature = {8, 1e-12};
    try {
        run_single(c, 300.0, 1);
        FAIL();
    } catch (const RunError& e) {
        EXPECT_EQ(e.T0(), 300.0);
        EXPECT_NE(std::string(e.what()).find("T0 = 300 K"), std::string::npos);
    }
}

TEST(Outputs, FilesAndHeaders)
{
    TempDir dir("outputs");
    auto c = fixtures::fig1();
    c.emit_p_resolved = true;
    const auto& run = fixtures::run_300();
    write_run_outputs(run, c, dir.path());
    const auto profiles = slurp(dir.path() / "profiles_T300.csv");
    EXPECT_EQ(profiles.substr(0, profiles.find('\n')), "x_nm,f_damp,n,j,j_q,phi");
    EXPECT_EQ(std::count(profiles.begin(), profiles.end(), '\n'), static_cast<long>(run.grid.x.size() + 1));
    const auto avec = slurp(dir.path() / "avec_T300.csv");
    EXPECT_EQ(avec.substr(0, avec.find('\n')), "t,a_vec");
    EXPECT_EQ(std::count(avec.begin(), avec.end(), '\n'), static_cast<long>(run.grid.t.size() + 1));
    EXPECT_TRUE(fs::exists(dir.path() / "kernel_fprime_T300.csv"));
    EXPECT_TRUE(fs::exists(dir.path() / "report_T300.json"));
}

TEST(Outputs, IdenticalAcrossWorkerCounts)
{
    TempDir a("w1"), b("w4");
    const auto c = fixtures::fig1();
    const auto s1 = run_sweep(c, 1);
    for (const auto& r : s1.runs)
        write_run_outputs(r, c, a.path());
    for (const auto& r : fig1_sweep().runs)
        write_run_outputs(r, c, b.path());
    for (double T0 : c.T0_kelvin)
        for (const auto& stem : {"profiles_T", "avec_T"}) {
            const auto name = fmt::format("{}{}.csv", stem, temperature_tag(T0));
            EXPECT_EQ(slurp(a.path() / name), slurp(b.path() / name)) << name;
        }
}

TEST(Cli, ValidateAcceptsShippedConfigs)
{
    TempDir dir("cli_validate");
    EXPECT_EQ(cli(fmt::format("validate \"{}\"", (fixtures::config_dir() / "fig1.cfg").string()), dir.path() / "log"),
              0);
}

TEST(Cli, BadConfigExitsTwoAndListsViolations)
{
    TempDir dir("cli_bad");
    const auto cfg = dir.path() / "bad.cfg";
    std::ofstream(cfg) << "[profile]\nT0_kelvin = 0\n[grid]\nn_p = 4\n";
    EXPECT_EQ(cli(fmt::format("validate \"{}\"", cfg.string()), dir.path() / "log"), 2);
    const auto log = slurp(dir.path() / "log");
    EXPECT_NE(log.find("profile.T0_kelvin"), std::string::npos);
    EXPECT_NE(log.find("grid.n_p"), std::string::npos);
    EXPECT_EQ(cli(fmt::format("run \"{}\"", cfg.string()), dir.path() / "log"), 2);
    EXPECT_EQ(cli("frobnicate", dir.path() / "log"), 2);
}

TEST(Cli, CollisionlessRunWritesZeroDamping)
{
    TempDir dir("cli_free");
    const auto out = dir.path() / "out";
    EXPECT_EQ(cli(fmt::format("run \"{}\" -o \"{}\" -j 2", (fixtures::config_dir() / "collisionless.cfg").string(),
                              out.string()),
                  dir.path() / "log"),
              0)
        << slurp(dir.path() / "log");
    std::ifstream in(out / "profiles_T300.csv");
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        const auto a = line.find(',');
        EXPECT_EQ(std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1)), 0.0);
        ++rows;
    }
    EXPECT_GT(rows, 0);
    EXPECT_TRUE(fs::exists(out / "sweep_summary.json"));
}

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

#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "thermoqbe/observables.hpp"

using namespace thermoqbe;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const UniformAxis p_axis(-1.0, 1.0, 201);
const OnShell band{0.5, 0.0174};

Field3D filled(const std::function<double(double)>& g, std::size_t nx = 3, std::size_t nt = 2)
{
    Field3D f(p_axis.size(), nx, nt);
    for (std::size_t i = 0; i < p_axis.size(); ++i)
        for (std::size_t j = 0; j < nx; ++j)
            for (std::size_t k = 0; k < nt; ++k)
                f(i, j, k) = g(p_axis[i]);
    return f;
}

} // namespace

TEST(Moments, VanishForEmptyBand)
{
    const auto f = filled([](double) { return 0.0; });
    for (double v : charge_density(f, p_axis, 0))
        EXPECT_EQ(v, 0.0);
    for (double v : current_density(f, p_axis, band, 0))
        EXPECT_EQ(v, 0.0);
    for (double v : thermal_current_density(f, p_axis, band, 0))
        EXPECT_EQ(v, 0.0);
}

TEST(Moments, BoxDistributionCountsItsWidth)
{
    // Nodes at -0.3 and 0.5 bound the box exactly; trapezoid half-weights at
    // the edges are matched by setting those nodes to one half.
    const auto f = filled([](double p) {
        if (std::abs(p + 0.3) < 1e-9 || std::abs(p - 0.5) < 1e-9)
            return 0.5;
        return (p > -0.3 && p < 0.5) ? 1.0 : 0.0;
    });
    for (double v : charge_density(f, p_axis, 1))
        EXPECT_NEAR(v, 0.8 / two_pi, 1e-14);
}

TEST(Moments, EvenDistributionCarriesNoCurrent)
{
    fixtures::Gen gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = gen.uniform(0.1, 3.0);
        const double c = gen.uniform(-0.5, 0.5);
        const auto f = filled([&](double p) { return std::exp(-a * p * p) + c * p * p; });
        for (double v : current_density(f, p_axis, band, 0))
            EXPECT_NEAR(v, 0.0, 1e-15);
        for (double v : thermal_current_density(f, p_axis, band, 0))
            EXPECT_NEAR(v, 0.0, 1e-15);
        for (double v : charge_density(f, p_axis, 0))
            EXPECT_GE(v, 0.0);
    }
}

TEST(Moments, CurrentSignFollowsCarrierCharge)
{
    const auto f = filled([](double p) { return p > 0.0 ? 1.0 : 0.0; });
    EXPECT_LT(current_density(f, p_axis, band, 0)[0], 0.0);
    EXPECT_GT(thermal_current_density(f, p_axis, band, 0)[0], 0.0);
}

TEST(Moments, LinearInDistribution)
{
    fixtures::Gen gen(11);
    Field3D f(p_axis.size(), 4, 1), g(p_axis.size(), 4, 1), h(p_axis.size(), 4, 1);
    for (std::size_t i = 0; i < f.data().size(); ++i) {
        f.data()[i] = gen.uniform(0.0, 1.0);
        g.data()[i] = gen.uniform(0.0, 1.0);
        h.data()[i] = 2.0 * f.data()[i] + 3.0 * g.data()[i];
    }
    const auto jf = current_density(f, p_axis, band, 0);
    const auto jg = current_density(g, p_axis, band, 0);
    const auto jh = current_density(h, p_axis, band, 0);
    for (std::size_t x = 0; x < 4; ++x)
        EXPECT_NEAR(jh[x], 2.0 * jf[x] + 3.0 * jg[x], 1e-13);
}

TEST(DampingProfile, EqualsKernelForUnitHole)
{
    const auto& run = fixtures::run_300();
    const Field3D one(run.f.np(), run.f.nx(), run.f.nt(), 1.0);
    const auto fd = damping_force_profile(run.kernels, one, run.solution.ref.ip, 0);
    for (std::size_t j = 0; j < fd.size(); ++j)
        EXPECT_EQ(fd[j], run.kernels.A(run.solution.ref.ip, j));
}

TEST(DampingProfile, MatchesKernelTimesHole)
{
    const auto& run = fixtures::run_300();
    const auto ip = run.solution.ref.ip;
    const auto k = run.observables.evaluated_at;
    for (std::size_t j = 0; j < run.grid.x.size(); ++j)
        EXPECT_EQ(run.observables.f_damp[j], run.kernels.A(ip, j) * run.f_hole(ip, j, k));
}

TEST(Observables, MatchFineGridOracle)
{
    const auto& run = fixtures::run_300();
    const oracle::FineRun fine(run, fixtures::single(300.0), 10);
    const auto n = charge_density(run.f, run.grid.p, 0);
    const auto j = current_density(run.f, run.grid.p, run.band, 0);
    const auto jq = thermal_current_density(run.f, run.grid.p, run.band, 0);
    EXPECT_LT(oracle::max_relative_error(n, fine.n()), 5e-4);
    EXPECT_LT(oracle::max_relative_error(j, fine.j()), 5e-4);
    EXPECT_LT(oracle::max_relative_error(jq, fine.j_q()), 5e-4);
}

TEST(Observables, NoDampingWithoutCoupling)
{
    auto cfg = fixtures::single(300.0);
    cfg.bath.coupling_g2 = 0.0;
    cfg.checks = {};
    const auto run = run_single(cfg, 300.0, 2);
    for (double v : run.observables.f_damp)
        EXPECT_EQ(v, 0.0);
}

TEST(Observables, DefaultRegimeTrends)
{
    const auto& run = fixtures::run_300();
    const auto& obs = run.observables;
    EXPECT_EQ(obs.evaluated_at, 0u);
    for (double v : obs.n)
        EXPECT_GE(v, 0.0);
    std::size_t breaks = 0;
    for (std::size_t i = 1; i < obs.n.size(); ++i)
        breaks += (obs.n[i] <= obs.n[i - 1]) + (obs.j[i] <= obs.j[i - 1]);
    EXPECT_LE(breaks, 2u);
    EXPECT_EQ(obs.metadata.T0, 300.0);
    EXPECT_DOUBLE_EQ(obs.metadata.p_ref, run.grid.p[run.solution.ref.ip]);
}

TEST(Observables, TrendsHoldAtEverySnapshot)
{
    const auto& run = fixtures::run_300();
    for (std::size_t k = 0; k < run.grid.t.size(); k += 10) {
        const auto n = charge_density(run.f, run.grid.p, k);
        const auto j = current_density(run.f, run.grid.p, run.band, k);
        for (std::size_t i = 2; i + 2 < n.size(); ++i) {
            EXPECT_GT(n[i], n[i - 1]) << "t index " << k << ", x index " << i;
            EXPECT_GT(j[i], j[i - 1]) << "t index " << k << ", x index " << i;
        }
    }
}

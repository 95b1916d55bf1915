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
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "thermoqbe/config.hpp"
#include "thermoqbe/errors.hpp"

using namespace thermoqbe;

namespace {

std::vector<std::string> violations_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle)
{
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST(Config, EmptyTextGivesDefaults)
{
    const auto c = parse_config("");
    const RunConfig d;
    EXPECT_EQ(c.T0_kelvin, d.T0_kelvin);
    EXPECT_EQ(c.n_p, d.n_p);
    EXPECT_EQ(c.field_V_per_m, d.field_V_per_m);
    EXPECT_FALSE(c.mu_eV);
    EXPECT_FALSE(c.solver.p_ref);
    EXPECT_EQ(c.solver.closure, Closure::reference_point);
    EXPECT_EQ(c.solver.denominator_policy, DenominatorPolicy::clamp);
}

TEST(Config, ShippedConfigsLoad)
{
    const auto fig1 = fixtures::fig1();
    EXPECT_EQ(fig1.T0_kelvin, (std::vector<double>{200.0, 250.0, 300.0}));
    EXPECT_EQ(fig1.gradient_k_per_nm, 2.0);
    EXPECT_EQ(fig1.field_V_per_m, -1e7);
    EXPECT_EQ(fig1.residual_threshold, 2e-3);
    const auto free = load_config(fixtures::config_dir() / "collisionless.cfg");
    EXPECT_EQ(free.bath.coupling_g2, 0.0);
}

TEST(Config, ParsesEveryValueKind)
{
    const auto c = parse_config(R"(
[profile]
T0_kelvin = 300, 150
[band]
mu_eV = 0.02
[solver]
p_ref = AUTO
x_ref = 1.5
closure = weighted_average
denominator_policy = error
[corrections]
enabled = yes
prefactor = 0.5
[output]
dir = somewhere/else
emit_p_resolved = on
)");
    EXPECT_EQ(c.T0_kelvin, (std::vector<double>{300.0, 150.0}));
    ASSERT_TRUE(c.mu_eV);
    EXPECT_EQ(*c.mu_eV, 0.02);
    EXPECT_FALSE(c.solver.p_ref);
    ASSERT_TRUE(c.solver.x_ref);
    EXPECT_EQ(*c.solver.x_ref, 1.5);
    EXPECT_EQ(c.solver.closure, Closure::weighted_average);
    EXPECT_EQ(c.solver.denominator_policy, DenominatorPolicy::error);
    EXPECT_TRUE(c.corrections_enabled);
    EXPECT_EQ(c.correction_prefactor, 0.5);
    EXPECT_EQ(c.output_dir, "somewhere/else");
    EXPECT_TRUE(c.emit_p_resolved);
}

TEST(Config, UnknownNamesAreRejected)
{
    const auto v = violations_of("[bath]\nsound_sped = 0.1\n[nonsense]\na = 1\n");
    EXPECT_TRUE(mentions(v, "bath.sound_sped"));
    EXPECT_TRUE(mentions(v, "[nonsense]"));
}

TEST(Config, ReportsEveryViolationAtOnce)
{
    const auto v = violations_of(R"(
[bath]
delta = -1
[grid]
n_p = 400
n_t = two
[solver]
closure = magic
[corrections]
enabled = maybe
)");
    EXPECT_EQ(v.size(), 5u);
    EXPECT_TRUE(mentions(v, "bath.delta"));
    EXPECT_TRUE(mentions(v, "grid.n_p"));
    EXPECT_TRUE(mentions(v, "grid.n_t"));
    EXPECT_TRUE(mentions(v, "solver.closure"));
    EXPECT_TRUE(mentions(v, "corrections.enabled"));
}

TEST(Config, RejectsNonPositiveTemperatures)
{
    EXPECT_TRUE(mentions(violations_of("[profile]\nT0_kelvin = 0\n"), "profile.T0_kelvin"));
    const auto v = violations_of("[profile]\nT0_kelvin = 10\ngradient_k_per_nm = -3\nlength_nm = 5\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(mentions(v, "T(L) = -5 K"));
    EXPECT_TRUE(violations_of("[profile]\nT0_kelvin = 10\ngradient_k_per_nm = -1.9\nlength_nm = 5\n").empty());
}

TEST(Config, RejectsMalformedNumbers)
{
    EXPECT_TRUE(mentions(violations_of("[field]\nfield_V_per_m = 1e7x\n"), "field.field_V_per_m"));
    EXPECT_TRUE(mentions(violations_of("[field]\nfield_V_per_m = nan\n"), "field.field_V_per_m"));
    EXPECT_TRUE(mentions(violations_of("[grid]\nn_x = -5\n"), "grid.n_x"));
    EXPECT_TRUE(mentions(violations_of("[profile]\nT0_kelvin = 200, , 300\n"), "profile.T0_kelvin"));
}

TEST(Config, CrossFieldChecks)
{
    EXPECT_TRUE(mentions(violations_of("[output]\nsnapshot_t_index = 51\n"), "snapshot_t_index"));
    EXPECT_TRUE(mentions(violations_of("[band]\ndensity_n0 = 0.5\n"), "band.density_n0"));
    EXPECT_TRUE(mentions(violations_of("[solver]\nx_ref = 9\n"), "solver.x_ref"));
    EXPECT_TRUE(mentions(violations_of("[profile]\nT0_kelvin = 300, 300\n"), "distinct"));
}

TEST(Config, MissingFileIsConfigError) { EXPECT_THROW(load_config("/nonexistent/thermoqbe.cfg"), ConfigError); }

TEST(Config, DescribeRoundTrips)
{
    for (const auto& name : {"fig1.cfg", "collisionless.cfg"}) {
        const auto c = load_config(fixtures::config_dir() / name);
        const auto text = describe(c);
        const auto back = parse_config(text);
        EXPECT_EQ(describe(back), text) << name;
    }
}

TEST(Config, InterpretationFlagsFollowSettings)
{
    RunConfig c;
    const auto off = interpretation_flags(c);
    EXPECT_TRUE(mentions(off, "corrections off"));
    c.corrections_enabled = true;
    c.solver.closure = Closure::weighted_average;
    const auto on = interpretation_flags(c);
    EXPECT_TRUE(mentions(on, "corrections on"));
    EXPECT_TRUE(mentions(on, "weighted_average"));
    EXPECT_EQ(on.size(), off.size());
}

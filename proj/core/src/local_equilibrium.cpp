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

#include "thermoqbe/local_equilibrium.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/numerics.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

TemperatureProfile::TemperatureProfile(double T0_kelvin, double gradient_k_per_nm, double length_nm)
    : T0_(T0_kelvin), k_(gradient_k_per_nm), L_(length_nm)
{
    if (!(T0_ > 0.0))
        throw DomainError(fmt::format("reference temperature must be > 0 K, got {}", T0_));
    if (!(L_ > 0.0))
        throw DomainError(fmt::format("sample length must be > 0 nm, got {}", L_));
    if (!std::isfinite(k_))
        throw DomainError("temperature gradient must be finite");
    if (!(T0_ + k_ * L_ > 0.0))
        throw DomainError(fmt::format("temperature profile reaches {} K at x = L", T0_ + k_ * L_));
}

double TemperatureProfile::at(double x) const
{
    // A few ulps of slack so that grid nodes computed as lo + i*h are accepted.
    const double slack = 1e-12 * L_;
    if (!(x >= -slack && x <= L_ + slack))
        throw DomainError(fmt::format("x = {} nm lies outside [0, {}] nm", x, L_));
    return T0_ + k_ * x;
}

double fermi(double xi, double kT) noexcept
{
    const double z = xi / kT;
    if (z > 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

EquilibriumField build_equilibrium(const TemperatureProfile& profile, double mu, double mass,
                                   const UniformAxis& p_axis, const UniformAxis& x_axis)
{
    if (!(mass > 0.0))
        throw DomainError("effective mass must be > 0");
    EquilibriumField eq;
    eq.mu = mu;
    eq.mass = mass;
    eq.f0 = Field2D(p_axis.size(), x_axis.size());
    eq.df0_dp = Field2D(p_axis.size(), x_axis.size());
    for (std::size_t ix = 0; ix < x_axis.size(); ++ix) {
        const double kT = units::kelvin_to_energy(profile.at(x_axis[ix]));
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
            const double p = p_axis[ip];
            const double f = fermi(p * p / (2.0 * mass) - mu, kT);
            eq.f0(ip, ix) = f;
            eq.df0_dp(ip, ix) = -(p / mass) * f * (1.0 - f) / kT;
        }
    }
    return eq;
}

double equilibrium_density(double mu, double temperature_K, double mass, const UniformAxis& p_axis)
{
    const double kT = units::kelvin_to_energy(temperature_K);
    if (!(kT > 0.0))
        throw DomainError("equilibrium density needs T > 0");
    std::vector<double> f(p_axis.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double p = p_axis[i];
        f[i] = fermi(p * p / (2.0 * mass) - mu, kT);
    }
    return numerics::trapezoid(f, p_axis.step()) / (2.0 * std::numbers::pi);
}

double solve_chemical_potential(double n0, double temperature_K, double mass, const UniformAxis& p_axis)
{
    if (!(n0 > 0.0))
        throw DomainError(fmt::format("target density must be > 0, got {}", n0));
    const double capacity = (p_axis.hi() - p_axis.lo()) / (2.0 * std::numbers::pi);
    if (!(n0 < capacity))
        throw DomainError(fmt::format("target density {} 1/nm exceeds what the momentum grid can hold ({} 1/nm)",
                                      n0, capacity));

    const double kT = units::kelvin_to_energy(temperature_K);
    const double pmax = std::max(std::abs(p_axis.lo()), std::abs(p_axis.hi()));
    const double emax = pmax * pmax / (2.0 * mass);
    auto excess = [&](double mu) { return equilibrium_density(mu, temperature_K, mass, p_axis) - n0; };

    double lo = -10.0 * kT - emax;
    double hi = emax + 10.0 * kT;
    while (excess(lo) > 0.0)
        lo -= 10.0 * kT + std::abs(lo);
    while (excess(hi) < 0.0) {
        hi += 10.0 * kT + std::abs(hi);
        if (hi > 1e6)
            throw DomainError("could not bracket the chemical potential");
    }

    const auto done = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        return std::abs(excess(mid)) <= 1e-12 * n0 || std::abs(b - a) <= 1e-15 * std::max(1.0, std::abs(mid));
    };
    const auto [a, b] = boost::math::tools::bisect(excess, lo, hi, done);
    const double mu = 0.5 * (a + b);
    if (std::abs(excess(mu)) > 1e-10 * n0)
        throw DomainError(fmt::format("chemical potential search stalled at residual {}", excess(mu)));
    return mu;
}

} // namespace thermoqbe

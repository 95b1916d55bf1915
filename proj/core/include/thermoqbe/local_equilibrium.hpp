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

#include "thermoqbe/grid.hpp"

namespace thermoqbe {

/// Linear temperature profile T(x) = T0 + k x on [0, L].
class TemperatureProfile {
public:
    /// Throws DomainError unless T0 > 0, L > 0 and T(L) > 0.
    TemperatureProfile(double T0_kelvin, double gradient_k_per_nm, double length_nm);

    double T0() const noexcept { return T0_; }
    double gradient() const noexcept { return k_; }
    double length() const noexcept { return L_; }

    /// Throws DomainError outside [0, L].
    double at(double x) const;

private:
    double T0_;
    double k_;
    double L_;
};

/// Fermi-Dirac occupation 1/(exp(xi/kT) + 1), overflow-safe.
double fermi(double xi, double kT) noexcept;

/// Local-equilibrium distribution over (p, x) with global mu and local T(x).
struct EquilibriumField {
    Field2D f0;
    Field2D df0_dp; ///< analytic: -(p/m) f0 (1 - f0) / kT(x)
    double mu = 0.0;
    double mass = 0.5;
};

EquilibriumField build_equilibrium(const TemperatureProfile& profile, double mu, double mass,
                                   const UniformAxis& p_axis, const UniformAxis& x_axis);

/// Line density (1/2pi) int dp f0 (trapezoid on p_axis) at temperature T.
double equilibrium_density(double mu, double temperature_K, double mass, const UniformAxis& p_axis);

/// Chemical potential giving line density n0 at temperature T, by bisection
/// to 1e-10 relative. Throws DomainError if n0 is not reachable on p_axis.
double solve_chemical_potential(double n0, double temperature_K, double mass, const UniformAxis& p_axis);

} // namespace thermoqbe

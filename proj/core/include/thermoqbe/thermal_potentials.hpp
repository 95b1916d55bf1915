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
/// Thermal scalar and vector potentials extracted from the damping force.
///
/// The damping-force field A(p_ref, x) f'(p_ref, x, t) is written as
/// da/dt + dphi/dx. Splitting f' = (1 - f0) + f1' gives the gauge used
/// here: phi carries the equilibrium part (dphi/dx = A (1 - f0)) and a
/// carries the deviation (da/dt = A f1'), with phi(0) = a(., 0) = 0.
/// Both potentials are stored over the (x, t) grid.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "thermoqbe/grid.hpp"
#include "thermoqbe/local_equilibrium.hpp"
#include "thermoqbe/scattering_kernels.hpp"

namespace thermoqbe {

struct ThermalPotentials {
    Field2D phi;   ///< (x, t), eV
    Field2D a_vec; ///< (x, t), hbar/nm
    std::string gauge_label;
};

/// phi(x) = int_0^x A(p_ref, x') (1 - f0(p_ref, x')) dx'. At the Fermi
/// momentum 1 - f0 = f0, so this is also int A f0 dx'.
std::vector<double> scalar_potential(const KernelSet& kernels, const EquilibriumField& equilibrium,
                                     const UniformAxis& x_axis, std::size_t ip_ref);

/// a(x, t) = int_0^t A(p_ref, x) f1'(p_ref, x, t') dt', f1' = f0 - f.
Field2D vector_potential(const KernelSet& kernels, const Field3D& f, const EquilibriumField& equilibrium,
                         const UniformAxis& t_axis, std::size_t ip_ref);

/// phi_ss(x) = int_0^x A(p_ref, x') f'(p_ref, x', t_index) dx'.
std::vector<double> steady_state_scalar(const KernelSet& kernels, const Field3D& f_hole, const UniformAxis& x_axis,
                                        std::size_t ip_ref, std::size_t t_index);

/// Broadcasts a static phi(x) over t and pairs it with a(x, t).
ThermalPotentials make_potentials(const std::vector<double>& phi, Field2D a_vec, std::string gauge_label);

/// The full potential pair in the equilibrium/deviation gauge.
ThermalPotentials extract_potentials(const KernelSet& kernels, const Field3D& f, const EquilibriumField& equilibrium,
                                     const UniformAxis& x_axis, const UniformAxis& t_axis, std::size_t ip_ref);

/// Gauge function chi(x, t) given by its analytic partial derivatives.
struct GaugeFunction {
    std::function<double(double x, double t)> dchi_dt;
    std::function<double(double x, double t)> dchi_dx;
};

/// phi -> phi - dchi/dt, a -> a + dchi/dx on every (x, t) node.
ThermalPotentials gauge_transform(const ThermalPotentials& potentials, const GaugeFunction& chi,
                                  const UniformAxis& x_axis, const UniformAxis& t_axis);

/// da/dt + dphi/dx by second-order finite differences on the (x, t) grid.
Field2D reconstructed_force(const ThermalPotentials& potentials, const UniformAxis& x_axis, const UniformAxis& t_axis);

/// A(p_ref, x) f'(p_ref, x, t) over the (x, t) grid.
Field2D damping_force_field(const KernelSet& kernels, const Field3D& f_hole, std::size_t ip_ref);

} // namespace thermoqbe

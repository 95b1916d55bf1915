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
/// Moment profiles of the solved distribution.
///
/// Units follow the internal system (hbar = e = 1): n in 1/nm, j in
/// e*eV/hbar, j_q in eV^2/hbar, f_damp in eV/nm.

#include <cstddef>
#include <vector>

#include "thermoqbe/grid.hpp"
#include "thermoqbe/scattering_kernels.hpp"

namespace thermoqbe {

struct ObservableMetadata {
    double T0 = 0.0;
    double gradient = 0.0;
    double field_V_per_m = 0.0;
    double p_ref = 0.0;
};

struct ObservableProfiles {
    std::vector<double> f_damp;
    std::vector<double> n;
    std::vector<double> j;
    std::vector<double> j_q;
    std::size_t evaluated_at = 0;
    ObservableMetadata metadata;
};

/// f_damp(x) = A(p_ref, x) f'(p_ref, x, t_index).
std::vector<double> damping_force_profile(const KernelSet& kernels, const Field3D& f_hole, std::size_t ip_ref,
                                          std::size_t t_index);

/// n(x) = (1/2 pi) int dp f.
std::vector<double> charge_density(const Field3D& f, const UniformAxis& p_axis, std::size_t t_index);

/// j(x) = -(1/2 pi) int dp (p/m) f.
std::vector<double> current_density(const Field3D& f, const UniformAxis& p_axis, const OnShell& band,
                                    std::size_t t_index);

/// j_q(x) = (1/2 pi) int dp xi_p (p/m) f, heat measured from mu.
std::vector<double> thermal_current_density(const Field3D& f, const UniformAxis& p_axis, const OnShell& band,
                                            std::size_t t_index);

ObservableProfiles compute_observables(const KernelSet& kernels, const Field3D& f, const Field3D& f_hole,
                                       const UniformAxis& p_axis, const OnShell& band, std::size_t ip_ref,
                                       std::size_t t_index, const ObservableMetadata& metadata);

} // namespace thermoqbe

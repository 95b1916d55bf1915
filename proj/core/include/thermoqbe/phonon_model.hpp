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
/// Acoustic phonon bath: Debye dispersion, deformation-potential coupling
/// and the Boltzmann-form occupation factor.

namespace thermoqbe {

/// Phonon occupation N_q = exp(-omega_q / k_B T).
///
/// This is the classical (Maxwell-Boltzmann) limit of the Bose factor and is
/// used as-is; it lies in (0, 1].
/// Throws DomainError for temperature_K <= 0 or omega_q < 0.
double occupation(double omega_q, double temperature_K);

struct PhononBathParams {
    double sound_speed = 0.02;   ///< c_s in eV*nm, omega_q = c_s |q|
    double debye_cutoff = 1.0;   ///< q_D in 1/nm
    double coupling_g2 = 1.0e-4; ///< g^2 in eV^2*nm, M_q^2 = g^2 |q|
    double delta = 0.02;         ///< resolvent broadening in eV
};

class PhononBath {
public:
    /// Validates: c_s > 0, q_D > 0, g^2 >= 0, delta > 0.
    explicit PhononBath(const PhononBathParams& params = {});

    const PhononBathParams& params() const noexcept { return params_; }
    double sound_speed() const noexcept { return params_.sound_speed; }
    double debye_cutoff() const noexcept { return params_.debye_cutoff; }
    double coupling_g2() const noexcept { return params_.coupling_g2; }
    double delta() const noexcept { return params_.delta; }

    /// omega_q = c_s |q|. |q| > q_D is an error, not a clamp.
    double dispersion(double q) const;
    /// M_q^2 = g^2 |q|.
    double coupling_sq(double q) const;

private:
    PhononBathParams params_;
};

} // namespace thermoqbe

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
/// Internal unit system.
///
/// Energies are in eV, lengths in nm, momenta in hbar/nm and times in
/// hbar/eV (about 0.658 fs), so hbar = 1 and the elementary charge is 1.
/// Temperatures stay in kelvin at the interfaces and only enter the
/// physics as k_B*T in eV.

namespace thermoqbe::units {

inline constexpr double boltzmann_eV_per_K = 8.617333262e-5;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double hbar_eV_fs = 0.6582119569;
inline constexpr double nm_per_m = 1.0e9;

double kelvin_to_energy(double kelvin);
double energy_to_kelvin(double energy_eV);

/// Electric field in V/m to the force per unit charge in eV/nm.
double field_to_internal(double volts_per_m);
double field_from_internal(double eV_per_nm);

double fs_to_internal(double fs);
double internal_to_fs(double t);

/// Phonon group velocity in m/s to the eV*nm used by the Debye dispersion.
double sound_speed_to_internal(double m_per_s);
double sound_speed_from_internal(double eV_nm);

} // namespace thermoqbe::units

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

#include "thermoqbe/units.hpp"

#include <cstdlib>
#include <string>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/parallel.hpp"

namespace thermoqbe {

namespace units {

double kelvin_to_energy(double kelvin) { return boltzmann_eV_per_K * kelvin; }
double energy_to_kelvin(double energy_eV) { return energy_eV / boltzmann_eV_per_K; }

double field_to_internal(double volts_per_m) { return volts_per_m / nm_per_m; }
double field_from_internal(double eV_per_nm) { return eV_per_nm * nm_per_m; }

double fs_to_internal(double fs) { return fs / hbar_eV_fs; }
double internal_to_fs(double t) { return t * hbar_eV_fs; }

// c_s [eV nm] = hbar [eV s] * v [m/s] * 1e9 [nm/m]
double sound_speed_to_internal(double m_per_s) { return hbar_eV_s * m_per_s * nm_per_m; }
double sound_speed_from_internal(double eV_nm) { return eV_nm / (hbar_eV_s * nm_per_m); }

} // namespace units

namespace {

std::string join_violations(const std::vector<std::string>& v)
{
    std::string out = "invalid configuration:";
    for (const auto& s : v)
        out += "\n  - " + s;
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations))
{
}

unsigned workers_from_env(unsigned fallback)
{
    const char* raw = std::getenv("THERMOQBE_WORKERS");
    if (!raw || !*raw)
        return fallback;
    char* end = nullptr;
    const long n = std::strtol(raw, &end, 10);
    if (*end != '\0' || n <= 0)
        return fallback;
    return static_cast<unsigned>(n);
}

} // namespace thermoqbe

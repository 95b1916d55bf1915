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

#include "thermoqbe/phonon_model.hpp"

#include <cmath>
#include <string>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

double occupation(double omega_q, double temperature_K)
{
    if (!(temperature_K > 0.0))
        throw DomainError("occupation: temperature must be > 0 K, got " + std::to_string(temperature_K));
    if (!(omega_q >= 0.0))
        throw DomainError("occupation: phonon energy must be >= 0");
    return std::exp(-omega_q / units::kelvin_to_energy(temperature_K));
}

PhononBath::PhononBath(const PhononBathParams& params) : params_(params)
{
    if (!(params.sound_speed > 0.0))
        throw DomainError("PhononBath: sound_speed must be > 0");
    if (!(params.debye_cutoff > 0.0))
        throw DomainError("PhononBath: debye_cutoff must be > 0");
    if (!(params.coupling_g2 >= 0.0))
        throw DomainError("PhononBath: coupling_g2 must be >= 0");
    if (!(params.delta > 0.0))
        throw DomainError("PhononBath: delta must be > 0");
}

double PhononBath::dispersion(double q) const
{
    if (std::abs(q) > params_.debye_cutoff)
        throw DomainError("PhononBath::dispersion: |q| beyond the Debye cutoff");
    return params_.sound_speed * std::abs(q);
}

double PhononBath::coupling_sq(double q) const
{
    if (std::abs(q) > params_.debye_cutoff)
        throw DomainError("PhononBath::coupling_sq: |q| beyond the Debye cutoff");
    return params_.coupling_g2 * std::abs(q);
}

} // namespace thermoqbe

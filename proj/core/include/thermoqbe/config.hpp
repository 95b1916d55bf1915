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
/// Run configuration: a flat INI-style file with sections.
///
/// Every key has a default; unknown sections or keys are rejected. See
/// docs/config.md for the full schema.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermoqbe/phonon_model.hpp"
#include "thermoqbe/scattering_kernels.hpp"
#include "thermoqbe/sov_solver.hpp"

namespace thermoqbe {

struct TrendChecks {
    bool damping_monotone_in_T0 = true;
    bool thermal_current_monotone_in_T0 = true;
    bool current_increasing_in_x = true;
    bool density_increasing_in_x = true;
    /// Fraction of x nodes, at either boundary, allowed to break a
    /// monotone-in-x check.
    double boundary_exception_fraction = 0.01;
};

struct RunConfig {
    PhononBathParams bath;
    QuadratureOptions quadrature;

    std::vector<double> T0_kelvin{200.0, 250.0, 300.0};
    double gradient_k_per_nm = 2.0;
    double length_nm = 5.0;
    double density_n0 = 0.04;
    std::optional<double> mu_eV; ///< overrides the density-based chemical potential
    double mass = 0.5;

    double field_V_per_m = -1.0e7;

    std::size_t n_p = 401;
    std::size_t n_x = 101;
    std::size_t n_t = 51;
    double p_max = 1.0;
    double t_max_fs = 100.0;

    SolverOptions solver;        ///< x_ref in nm; target_density is filled from density_n0
    double residual_threshold = 1.0;
    bool corrections_enabled = false;
    double correction_prefactor = 1.0;

    std::filesystem::path output_dir = "thermoqbe_out";
    bool emit_p_resolved = false;
    std::size_t snapshot_t_index = 0;

    TrendChecks checks;
};

/// Parses configuration text. Throws ConfigError naming every bad field.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. An unreadable file is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Every violated constraint, empty when the config is valid.
std::vector<std::string> validate(const RunConfig& config);

/// The modelling interpretations every run applies, one line each.
std::vector<std::string> interpretation_flags(const RunConfig& config);

/// Fully resolved configuration (defaults filled, internal units shown)
/// followed by the interpretation flags.
std::string describe(const RunConfig& config);

} // namespace thermoqbe

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

#include <cstdint>
#include <filesystem>
#include <random>

#include "thermoqbe/config.hpp"
#include "thermoqbe/experiment.hpp"

namespace fixtures {

inline std::filesystem::path config_dir() { return THERMOQBE_CONFIG_DIR; }

/// The bundled sweep configuration.
thermoqbe::RunConfig fig1();

/// fig1 restricted to a single temperature.
thermoqbe::RunConfig single(double T0);

/// Cached run of single(300).
const thermoqbe::RunResult& run_300();

/// Seeded source for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    std::mt19937_64 rng_;
};

} // namespace fixtures

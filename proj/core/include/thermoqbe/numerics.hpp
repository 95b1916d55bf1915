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
/// Fixed-order quadrature and finite-difference helpers on uniform samples.

#include <complex>
#include <span>
#include <vector>

namespace thermoqbe::numerics {

/// Composite Simpson rule. Needs an odd sample count >= 3.
double simpson(std::span<const double> y, double h);
std::complex<double> simpson(std::span<const std::complex<double>> y, double h);

/// Simpson with every second sample (twice the step), for Richardson pairs.
/// Needs (n-1) divisible by 4.
std::complex<double> simpson_half(std::span<const std::complex<double>> y, double h);

double trapezoid(std::span<const double> y, double h);

/// Running trapezoid integral; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double h);

/// Running trapezoid integral anchored at index `anchor` (out[anchor] = 0),
/// integrated outward in both directions.
std::vector<double> cumulative_trapezoid_from(std::span<const double> y, double h, std::size_t anchor);

/// Integrals over each of the y.size() - 1 cells from the cubic through the
/// four nearest samples (fourth order). Needs at least four samples.
std::vector<double> cell_integrals(std::span<const double> y, double h);

/// Second-order derivative: centered inside, one-sided three-point at the ends.
std::vector<double> gradient(std::span<const double> y, double h);

} // namespace thermoqbe::numerics

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

#include "thermoqbe/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/grid.hpp"

namespace thermoqbe {

UniformAxis::UniformAxis(double lo, double hi, std::size_t n) : lo_(lo), hi_(hi), n_(n)
{
    if (n < 2 || !(hi > lo))
        throw DomainError("UniformAxis needs n >= 2 and hi > lo");
    step_ = (hi - lo) / static_cast<double>(n - 1);
}

std::size_t UniformAxis::nearest(double value) const noexcept
{
    const double r = std::round((value - lo_) / step_);
    if (!(r > 0.0))
        return 0;
    return std::min(n_ - 1, static_cast<std::size_t>(r));
}

std::vector<double> UniformAxis::nodes() const
{
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = (*this)[i];
    return out;
}

UniformAxis UniformAxis::refined(std::size_t factor) const
{
    return UniformAxis(lo_, hi_, (n_ - 1) * factor + 1);
}

std::vector<double> Field2D::column(std::size_t j) const
{
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

namespace numerics {

namespace {

template <class T>
T simpson_impl(std::span<const T> y, double h, std::size_t stride)
{
    const std::size_t n = (y.size() - 1) / stride; // intervals
    T odd{}, even{};
    for (std::size_t k = 1; k < n; k += 2)
        odd += y[k * stride];
    for (std::size_t k = 2; k < n; k += 2)
        even += y[k * stride];
    const double hs = h * static_cast<double>(stride);
    return (y.front() + y.back() + 4.0 * odd + 2.0 * even) * (hs / 3.0);
}

} // namespace

double simpson(std::span<const double> y, double h)
{
    if (y.size() < 3 || y.size() % 2 == 0)
        throw DomainError("simpson needs an odd sample count >= 3");
    return simpson_impl(y, h, 1);
}

std::complex<double> simpson(std::span<const std::complex<double>> y, double h)
{
    if (y.size() < 3 || y.size() % 2 == 0)
        throw DomainError("simpson needs an odd sample count >= 3");
    return simpson_impl(y, h, 1);
}

std::complex<double> simpson_half(std::span<const std::complex<double>> y, double h)
{
    if (y.size() < 5 || (y.size() - 1) % 4 != 0)
        throw DomainError("simpson_half needs (n - 1) divisible by 4");
    return simpson_impl(y, h, 2);
}

double trapezoid(std::span<const double> y, double h)
{
    if (y.size() < 2)
        return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        s += y[i];
    return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> y, double h)
{
    return cumulative_trapezoid_from(y, h, 0);
}

std::vector<double> cumulative_trapezoid_from(std::span<const double> y, double h, std::size_t anchor)
{
    std::vector<double> out(y.size(), 0.0);
    if (y.empty())
        return out;
    assert(anchor < y.size());
    for (std::size_t i = anchor + 1; i < y.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (y[i - 1] + y[i]);
    for (std::size_t i = anchor; i-- > 0;)
        out[i] = out[i + 1] - 0.5 * h * (y[i] + y[i + 1]);
    return out;
}

std::vector<double> cell_integrals(std::span<const double> y, double h)
{
    const std::size_t n = y.size();
    if (n < 4)
        throw DomainError("cell_integrals needs at least 4 samples");
    const double w = h / 24.0;
    std::vector<double> out(n - 1);
    out[0] = w * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
    for (std::size_t i = 1; i + 2 < n; ++i)
        out[i] = w * (13.0 * (y[i] + y[i + 1]) - y[i - 1] - y[i + 2]);
    out[n - 2] = w * (9.0 * y[n - 1] + 19.0 * y[n - 2] - 5.0 * y[n - 3] + y[n - 4]);
    return out;
}

std::vector<double> gradient(std::span<const double> y, double h)
{
    const std::size_t n = y.size();
    std::vector<double> d(n, 0.0);
    if (n < 3)
        throw DomainError("gradient needs at least 3 samples");
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    return d;
}

} // namespace numerics
} // namespace thermoqbe

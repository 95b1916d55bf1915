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

#include "thermoqbe/observables.hpp"

#include <numbers>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/numerics.hpp"

namespace thermoqbe {

namespace {

constexpr double inv_2pi = 0.5 / std::numbers::pi;

void check(const Field3D& f, const UniformAxis& p_axis, std::size_t t_index)
{
    if (f.np() != p_axis.size())
        throw DomainError("moment: distribution does not match the momentum grid");
    if (t_index >= f.nt())
        throw DomainError("moment: time index out of range");
}

// (1/2pi) int dp w(p) f(p, x, t) for every x.
template <class Weight>
std::vector<double> moment(const Field3D& f, const UniformAxis& p_axis, std::size_t t_index, Weight&& w)
{
    check(f, p_axis, t_index);
    std::vector<double> wp(p_axis.size());
    for (std::size_t ip = 0; ip < wp.size(); ++ip)
        wp[ip] = w(p_axis[ip]);
    std::vector<double> out(f.nx());
    std::vector<double> y(p_axis.size());
    for (std::size_t ix = 0; ix < f.nx(); ++ix) {
        for (std::size_t ip = 0; ip < y.size(); ++ip)
            y[ip] = wp[ip] * f(ip, ix, t_index);
        out[ix] = inv_2pi * numerics::trapezoid(y, p_axis.step());
    }
    return out;
}

} // namespace

std::vector<double> damping_force_profile(const KernelSet& kernels, const Field3D& f_hole, std::size_t ip_ref,
                                          std::size_t t_index)
{
    if (ip_ref >= kernels.A.rows() || ip_ref >= f_hole.np() || kernels.A.cols() != f_hole.nx())
        throw DomainError("damping_force_profile: grid mismatch");
    if (t_index >= f_hole.nt())
        throw DomainError("damping_force_profile: time index out of range");
    std::vector<double> out(f_hole.nx());
    for (std::size_t ix = 0; ix < out.size(); ++ix)
        out[ix] = kernels.A(ip_ref, ix) * f_hole(ip_ref, ix, t_index);
    return out;
}

std::vector<double> charge_density(const Field3D& f, const UniformAxis& p_axis, std::size_t t_index)
{
    return moment(f, p_axis, t_index, [](double) { return 1.0; });
}

std::vector<double> current_density(const Field3D& f, const UniformAxis& p_axis, const OnShell& band,
                                    std::size_t t_index)
{
    return moment(f, p_axis, t_index, [&](double p) { return -band.velocity(p); });
}

std::vector<double> thermal_current_density(const Field3D& f, const UniformAxis& p_axis, const OnShell& band,
                                            std::size_t t_index)
{
    return moment(f, p_axis, t_index, [&](double p) { return band.xi(p) * band.velocity(p); });
}

ObservableProfiles compute_observables(const KernelSet& kernels, const Field3D& f, const Field3D& f_hole,
                                       const UniformAxis& p_axis, const OnShell& band, std::size_t ip_ref,
                                       std::size_t t_index, const ObservableMetadata& metadata)
{
    if (!f.same_shape(f_hole))
        throw DomainError("compute_observables: f and its hole complement differ in shape");
    ObservableProfiles out;
    out.f_damp = damping_force_profile(kernels, f_hole, ip_ref, t_index);
    out.n = charge_density(f, p_axis, t_index);
    out.j = current_density(f, p_axis, band, t_index);
    out.j_q = thermal_current_density(f, p_axis, band, t_index);
    out.evaluated_at = t_index;
    out.metadata = metadata;
    return out;
}

} // namespace thermoqbe

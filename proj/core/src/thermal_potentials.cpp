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

#include "thermoqbe/thermal_potentials.hpp"

#include <utility>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/numerics.hpp"

namespace thermoqbe {

namespace {

void check_ip(const KernelSet& kernels, std::size_t ip_ref)
{
    if (ip_ref >= kernels.A.rows())
        throw DomainError("reference momentum index outside the kernel grid");
}

} // namespace

std::vector<double> scalar_potential(const KernelSet& kernels, const EquilibriumField& equilibrium,
                                     const UniformAxis& x_axis, std::size_t ip_ref)
{
    check_ip(kernels, ip_ref);
    const std::size_t nx = x_axis.size();
    if (kernels.A.cols() != nx || equilibrium.f0.cols() != nx)
        throw DomainError("scalar_potential: x-grid mismatch");
    // Equilibrium part of the hole distribution, 1 - f0.
    std::vector<double> y(nx);
    for (std::size_t ix = 0; ix < nx; ++ix)
        y[ix] = kernels.A(ip_ref, ix) * (1.0 - equilibrium.f0(ip_ref, ix));
    return numerics::cumulative_trapezoid(y, x_axis.step());
}

Field2D vector_potential(const KernelSet& kernels, const Field3D& f, const EquilibriumField& equilibrium,
                         const UniformAxis& t_axis, std::size_t ip_ref)
{
    check_ip(kernels, ip_ref);
    const std::size_t nx = f.nx();
    const std::size_t nt = f.nt();
    if (nt != t_axis.size() || kernels.A.cols() != nx || equilibrium.f0.cols() != nx || ip_ref >= f.np())
        throw DomainError("vector_potential: grid mismatch");
    Field2D a(nx, nt);
    std::vector<double> y(nt);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double A = kernels.A(ip_ref, ix);
        const double f0 = equilibrium.f0(ip_ref, ix);
        for (std::size_t k = 0; k < nt; ++k)
            y[k] = A * (f0 - f(ip_ref, ix, k));
        const auto c = numerics::cumulative_trapezoid(y, t_axis.step());
        for (std::size_t k = 0; k < nt; ++k)
            a(ix, k) = c[k];
    }
    return a;
}

std::vector<double> steady_state_scalar(const KernelSet& kernels, const Field3D& f_hole, const UniformAxis& x_axis,
                                        std::size_t ip_ref, std::size_t t_index)
{
    check_ip(kernels, ip_ref);
    const std::size_t nx = x_axis.size();
    if (f_hole.nx() != nx || t_index >= f_hole.nt() || ip_ref >= f_hole.np())
        throw DomainError("steady_state_scalar: grid mismatch");
    std::vector<double> y(nx);
    for (std::size_t ix = 0; ix < nx; ++ix)
        y[ix] = kernels.A(ip_ref, ix) * f_hole(ip_ref, ix, t_index);
    return numerics::cumulative_trapezoid(y, x_axis.step());
}

ThermalPotentials make_potentials(const std::vector<double>& phi, Field2D a_vec, std::string gauge_label)
{
    if (phi.size() != a_vec.rows())
        throw DomainError("make_potentials: phi and a_vec disagree on the x-grid");
    ThermalPotentials out;
    out.phi = Field2D(a_vec.rows(), a_vec.cols());
    for (std::size_t ix = 0; ix < a_vec.rows(); ++ix)
        for (std::size_t k = 0; k < a_vec.cols(); ++k)
            out.phi(ix, k) = phi[ix];
    out.a_vec = std::move(a_vec);
    out.gauge_label = std::move(gauge_label);
    return out;
}

ThermalPotentials extract_potentials(const KernelSet& kernels, const Field3D& f, const EquilibriumField& equilibrium,
                                     const UniformAxis& x_axis, const UniformAxis& t_axis, std::size_t ip_ref)
{
    return make_potentials(scalar_potential(kernels, equilibrium, x_axis, ip_ref),
                           vector_potential(kernels, f, equilibrium, t_axis, ip_ref),
                           "reference-momentum gauge: phi from 1 - f0, a from f0 - f, phi(0) = 0, a(t = 0) = 0");
}

ThermalPotentials gauge_transform(const ThermalPotentials& potentials, const GaugeFunction& chi,
                                  const UniformAxis& x_axis, const UniformAxis& t_axis)
{
    if (potentials.phi.rows() != x_axis.size() || potentials.phi.cols() != t_axis.size() ||
        potentials.a_vec.rows() != x_axis.size() || potentials.a_vec.cols() != t_axis.size())
        throw DomainError("gauge_transform: potentials do not match the grid");
    if (!chi.dchi_dt || !chi.dchi_dx)
        throw DomainError("gauge_transform: gauge derivatives missing");
    ThermalPotentials out = potentials;
    for (std::size_t ix = 0; ix < x_axis.size(); ++ix)
        for (std::size_t k = 0; k < t_axis.size(); ++k) {
            const double x = x_axis[ix];
            const double t = t_axis[k];
            out.phi(ix, k) -= chi.dchi_dt(x, t);
            out.a_vec(ix, k) += chi.dchi_dx(x, t);
        }
    out.gauge_label = potentials.gauge_label + " (gauge-transformed)";
    return out;
}

Field2D reconstructed_force(const ThermalPotentials& potentials, const UniformAxis& x_axis, const UniformAxis& t_axis)
{
    const std::size_t nx = x_axis.size();
    const std::size_t nt = t_axis.size();
    if (potentials.phi.rows() != nx || potentials.phi.cols() != nt || potentials.a_vec.rows() != nx ||
        potentials.a_vec.cols() != nt)
        throw DomainError("reconstructed_force: potentials do not match the grid");
    Field2D out(nx, nt);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const auto da = numerics::gradient(potentials.a_vec.row(ix), t_axis.step());
        for (std::size_t k = 0; k < nt; ++k)
            out(ix, k) = da[k];
    }
    for (std::size_t k = 0; k < nt; ++k) {
        const auto dphi = numerics::gradient(potentials.phi.column(k), x_axis.step());
        for (std::size_t ix = 0; ix < nx; ++ix)
            out(ix, k) += dphi[ix];
    }
    return out;
}

Field2D damping_force_field(const KernelSet& kernels, const Field3D& f_hole, std::size_t ip_ref)
{
    check_ip(kernels, ip_ref);
    if (kernels.A.cols() != f_hole.nx() || ip_ref >= f_hole.np())
        throw DomainError("damping_force_field: grid mismatch");
    Field2D out(f_hole.nx(), f_hole.nt());
    for (std::size_t ix = 0; ix < f_hole.nx(); ++ix)
        for (std::size_t k = 0; k < f_hole.nt(); ++k)
            out(ix, k) = kernels.A(ip_ref, ix) * f_hole(ip_ref, ix, k);
    return out;
}

} // namespace thermoqbe

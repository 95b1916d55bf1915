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

#include "thermoqbe/scattering_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/local_equilibrium.hpp"
#include "thermoqbe/numerics.hpp"
#include "thermoqbe/parallel.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

namespace {

using cplx = std::complex<double>;

double sgn(double v) noexcept { return (v > 0.0) - (v < 0.0); }

// Indices of the integrals accumulated in one pass over the q-grid.
enum Slot : std::size_t { Ib1, Ia1, Jgain, Ia0, Ib0, n_slots };

struct PassResult {
    std::array<cplx, n_slots> full{};
    std::array<cplx, n_slots> half{};
    std::array<double, n_slots> l1{}; // integral of |Im integrand|, |Re| for the residue-free pieces
};

// Halving the q-step moves the extracted real coefficient by |d|; report it
// relative to the L1 norm of the integrand feeding that coefficient.
double richardson(double full, double half, double l1) noexcept
{
    if (!(l1 > 0.0))
        return 0.0;
    return std::abs(full - half) / l1;
}

} // namespace

ResolventPair resolvent_pair(const PhononBath& bath, double xi, double q, double temperature_K)
{
    const double w = bath.dispersion(q);
    const double n = occupation(w, temperature_K);
    const cplx lower = 1.0 / cplx(xi - w, bath.delta());
    const cplx upper = 1.0 / cplx(xi + w, bath.delta());
    return {(n + 1.0) * lower + n * upper, n * lower + (n + 1.0) * upper};
}

KernelEvaluator::KernelEvaluator(PhononBath bath, OnShell band, QuadratureOptions quad)
    : bath_(std::move(bath)), band_(band), quad_(quad)
{
    if (quad_.intervals < 4 || quad_.intervals % 4 != 0)
        throw DomainError("quadrature intervals must be a positive multiple of 4");
    if (!(band_.mass > 0.0))
        throw DomainError("effective mass must be > 0");
    const std::size_t n = quad_.intervals + 1;
    const double h = bath_.debye_cutoff() / static_cast<double>(quad_.intervals);
    q_.resize(n);
    m2_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        q_[k] = h * static_cast<double>(k);
        m2_[k] = bath_.coupling_sq(std::min(q_[k], bath_.debye_cutoff()));
    }
}

KernelEvaluator::All KernelEvaluator::evaluate(double p, double temperature_K) const
{
    const double xi = band_.xi(p);
    const double h = bath_.debye_cutoff() / static_cast<double>(quad_.intervals);
    const double kT = units::kelvin_to_energy(temperature_K);
    if (!(kT > 0.0))
        throw DomainError("kernel evaluation needs T > 0");
    const double delta = bath_.delta();

    const std::size_t n = q_.size();
    std::array<std::vector<cplx>, n_slots> integrand;
    for (auto& v : integrand)
        v.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        const double q = q_[k];
        const double w = bath_.sound_speed() * q;
        const double occ = std::exp(-w / kT);
        const cplx lower = 1.0 / cplx(xi - w, delta);
        const cplx upper = 1.0 / cplx(xi + w, delta);
        const cplx a = (occ + 1.0) * lower + occ * upper;
        const cplx b = occ * lower + (occ + 1.0) * upper;
        const double m2 = m2_[k];
        integrand[Ib1][k] = m2 * q * b;
        integrand[Ia1][k] = m2 * q * a;
        integrand[Jgain][k] = m2 * (lower - upper);
        integrand[Ia0][k] = m2 * a;
        integrand[Ib0][k] = m2 * b;
    }

    PassResult r;
    for (std::size_t s = 0; s < n_slots; ++s) {
        r.full[s] = numerics::simpson(integrand[s], h);
        r.half[s] = numerics::simpson_half(integrand[s], h);
        std::vector<double> mag(n);
        for (std::size_t k = 0; k < n; ++k)
            mag[k] = std::abs(integrand[s][k].imag());
        r.l1[s] = numerics::simpson(mag, h);
    }

    // The 2*pi of the collision prefactor cancels the 1/(2*pi) of the 1D measure.
    const double s = sgn(p);
    All out;
    // A = -sgn(p) Re[i Ib1] = sgn(p) Im(Ib1)
    out.A.value = s * r.full[Ib1].imag();
    out.A.imag_residue = -s * r.full[Ib1].real();
    out.A.richardson = richardson(s * r.full[Ib1].imag(), s * r.half[Ib1].imag(), r.l1[Ib1]);
    // B = -sgn(p) Re[-i Ia1] = -sgn(p) Im(Ia1)
    out.B.value = -s * r.full[Ia1].imag();
    out.B.imag_residue = s * r.full[Ia1].real();
    out.B.richardson = richardson(r.full[Ia1].imag(), r.half[Ia1].imag(), r.l1[Ia1]);
    // E = Re[-i J] = Im(J)
    out.E.value = r.full[Jgain].imag();
    out.E.imag_residue = -r.full[Jgain].real();
    out.E.richardson = richardson(r.full[Jgain].imag(), r.half[Jgain].imag(), r.l1[Jgain]);
    out.int_a = r.full[Ia0];
    out.int_b = r.full[Ib0];

    const double worst = std::max({out.A.richardson, out.B.richardson, out.E.richardson});
    if (worst > quad_.rel_tol)
        throw QuadratureError(fmt::format("q-quadrature not converged at p = {:.6g}, T = {:.6g} K: "
                                          "Richardson estimate {:.3e} > tolerance {:.3e}",
                                          p, temperature_K, worst, quad_.rel_tol),
                              worst);
    return out;
}

Coefficient KernelEvaluator::damping_A(double p, double temperature_K) const { return evaluate(p, temperature_K).A; }

Coefficient KernelEvaluator::relaxation_B(double p, double temperature_K) const
{
    return evaluate(p, temperature_K).B;
}

Coefficient KernelEvaluator::gain_E(double p) const
{
    // E carries no occupation factor; any positive temperature gives the same value.
    return evaluate(p, 300.0).E;
}

namespace {

CorrectionPair corrections_from(const KernelEvaluator::All& all, const OnShell& band, double delta, double p,
                                double df_dp, double df_dx, double prefactor)
{
    if (prefactor == 0.0)
        return {};
    const double xi = band.xi(p);
    const double d2 = delta * delta;
    const double denom = xi * xi + d2;
    const double dReGr_dp = band.velocity(p) * (d2 - xi * xi) / (denom * denom);
    CorrectionPair out;
    // C = Re[-i hbar Ib0 dReGr/dp + i hbar Ia0 (-i df/dp)]
    out.C = prefactor * (all.int_b.imag() * dReGr_dp + all.int_a.real() * df_dp);
    // D = Re[-i hbar Ia0 (-i df/dx)]; dReGr/dx = 0 for the free-particle model
    out.D = -prefactor * all.int_a.real() * df_dx;
    return out;
}

} // namespace

CorrectionPair KernelEvaluator::corrections(double p, double temperature_K, double df_dp, double df_dx,
                                            double prefactor) const
{
    return corrections_from(evaluate(p, temperature_K), band_, bath_.delta(), p, df_dp, df_dx, prefactor);
}

KernelSet build_kernels(const KernelEvaluator& evaluator, const UniformAxis& p_axis, const UniformAxis& x_axis,
                        const TemperatureProfile& profile, const EquilibriumField& equilibrium,
                        const KernelBuildOptions& options)
{
    const std::size_t np = p_axis.size();
    const std::size_t nx = x_axis.size();
    if (equilibrium.f0.rows() != np || equilibrium.f0.cols() != nx)
        throw DomainError("build_kernels: equilibrium field does not match the grid");

    KernelSet ks;
    ks.A = Field2D(np, nx);
    ks.B = Field2D(np, nx);
    ks.C = Field2D(np, nx);
    ks.D = Field2D(np, nx);
    ks.E_gain.assign(np, 0.0);
    ks.corrections_enabled = options.corrections_enabled;

    Field2D ratio_A(np, nx), ratio_B(np, nx), rich(np, nx);
    std::vector<double> ratio_E(np, 0.0);
    const auto ratio = [](const Coefficient& c) {
        return c.value != 0.0 ? std::abs(c.imag_residue / c.value) : 0.0;
    };

    const double k = profile.gradient();
    parallel_for(np * nx, options.workers, [&](std::size_t idx) {
        const std::size_t ip = idx / nx;
        const std::size_t ix = idx % nx;
        const double p = p_axis[ip];
        const double T = profile.at(x_axis[ix]);
        const auto all = evaluator.evaluate(p, T);
        ks.A(ip, ix) = all.A.value;
        ks.B(ip, ix) = all.B.value;
        ratio_A(ip, ix) = ratio(all.A);
        ratio_B(ip, ix) = ratio(all.B);
        rich(ip, ix) = std::max({all.A.richardson, all.B.richardson, all.E.richardson});
        if (ix == 0) {
            ks.E_gain[ip] = all.E.value;
            ratio_E[ip] = ratio(all.E);
        }
        if (options.corrections_enabled) {
            const double f0 = equilibrium.f0(ip, ix);
            const double kT = units::kelvin_to_energy(T);
            const double xi = evaluator.band().xi(p);
            // df0/dx = df0/dT * dT/dx
            const double df0_dx = f0 * (1.0 - f0) * xi / (kT * T) * k;
            const auto cd = corrections_from(all, evaluator.band(), evaluator.bath().delta(), p,
                                             equilibrium.df0_dp(ip, ix), df0_dx, options.correction_prefactor);
            ks.C(ip, ix) = cd.C;
            ks.D(ip, ix) = cd.D;
        }
    });

    auto& d = ks.diagnostics;
    for (double v : ratio_A.data())
        d.max_imag_ratio_A = std::max(d.max_imag_ratio_A, v);
    for (double v : ratio_B.data())
        d.max_imag_ratio_B = std::max(d.max_imag_ratio_B, v);
    for (double v : ratio_E)
        d.max_imag_ratio_E = std::max(d.max_imag_ratio_E, v);
    for (double v : rich.data())
        d.max_richardson = std::max(d.max_richardson, v);
    return ks;
}

} // namespace thermoqbe

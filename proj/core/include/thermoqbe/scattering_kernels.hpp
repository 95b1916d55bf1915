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
/// Resolvent coefficients a, b and the kernel fields A, B, E, C, D of the
/// damped transport equation.
///
/// All momentum integrals are evaluated in the one-dimensional reduction:
/// q runs over (0, q_D] with measure dq/2pi, energy denominators are taken
/// on shell at xi_p = p^2/2m - mu, and vector coefficients are oriented
/// along -sgn(p). Each force-like coefficient is the real part of
/// 2*pi*i times a complex integral; the imaginary part is kept only as a
/// diagnostic.

#include <complex>
#include <cstddef>
#include <vector>

#include "thermoqbe/grid.hpp"
#include "thermoqbe/phonon_model.hpp"

namespace thermoqbe {

class TemperatureProfile;
struct EquilibriumField;

/// Band parameters needed to put the resolvent on shell.
struct OnShell {
    double mass = 0.5; ///< effective mass, hbar^2 / (eV nm^2)
    double mu = 0.0;   ///< chemical potential, eV

    double xi(double p) const noexcept { return p * p / (2.0 * mass) - mu; }
    double velocity(double p) const noexcept { return p / mass; }
};

struct ResolventPair {
    std::complex<double> a;
    std::complex<double> b;
};

/// a = (N+1)/(xi - w + i delta) + N/(xi + w + i delta)
/// b = N/(xi - w + i delta) + (N+1)/(xi + w + i delta), w = omega_q, N = N_q(T).
ResolventPair resolvent_pair(const PhononBath& bath, double xi, double q, double temperature_K);

struct QuadratureOptions {
    std::size_t intervals = 256; ///< Simpson intervals over [0, q_D]; multiple of 4
    double rel_tol = 1e-4;       ///< allowed change when the q-step is halved
};

/// One kernel coefficient with its diagnostics.
struct Coefficient {
    double value = 0.0;
    double imag_residue = 0.0; ///< discarded imaginary part, same orientation as value
    double richardson = 0.0;   ///< |I(h) - I(2h)| relative to the integrand's L1 norm
};

struct CorrectionPair {
    double C = 0.0; ///< anomalous velocity correction
    double D = 0.0; ///< force correction
};

class KernelEvaluator {
public:
    KernelEvaluator(PhononBath bath, OnShell band, QuadratureOptions quad = {});

    const PhononBath& bath() const noexcept { return bath_; }
    const OnShell& band() const noexcept { return band_; }
    const QuadratureOptions& quadrature() const noexcept { return quad_; }

    /// Damping-force coefficient A(p, T) = -sgn(p) Re[i int dq M_q^2 q b].
    Coefficient damping_A(double p, double temperature_K) const;
    /// Inverse damping relaxation coefficient B(p, T) = -sgn(p) Re[-i int dq M_q^2 q a].
    Coefficient relaxation_B(double p, double temperature_K) const;
    /// Gain coefficient without its f'f factor:
    /// E(p) = Re[-i int dq M_q^2 (1/(xi - w + i delta) - 1/(xi + w + i delta))].
    Coefficient gain_E(double p) const;

    /// Quantum-correction coefficients for a model Green function
    /// Re G^r = xi/(xi^2 + delta^2), G^> = i(1 - f).
    ///   C = hbar [Im(int M^2 b) dReG^r/dp + Re(int M^2 a) df/dp]
    ///   D = -hbar Re(int M^2 a) df/dx
    /// `prefactor` plays the role of hbar; zero switches both off.
    CorrectionPair corrections(double p, double temperature_K, double df_dp, double df_dx,
                               double prefactor = 1.0) const;

    /// Every coefficient at once, sharing one pass over the q-grid.
    struct All {
        Coefficient A, B, E;
        std::complex<double> int_a; ///< int dq M_q^2 a, no q factor (feeds the corrections)
        std::complex<double> int_b; ///< int dq M_q^2 b
    };
    All evaluate(double p, double temperature_K) const;

private:
    PhononBath bath_;
    OnShell band_;
    QuadratureOptions quad_;
    std::vector<double> q_;
    std::vector<double> m2_;
};

struct KernelDiagnostics {
    double max_imag_ratio_A = 0.0; ///< max |imag residue| / |value| where value != 0
    double max_imag_ratio_B = 0.0;
    double max_imag_ratio_E = 0.0;
    double max_richardson = 0.0;
};

/// Kernel fields sampled on the simulation grid. A, B, C, D are evaluated at
/// the local temperature T(x); E carries no phonon occupation and depends on p only.
struct KernelSet {
    Field2D A;                   ///< (p, x), eV/nm
    Field2D B;                   ///< (p, x)
    std::vector<double> E_gain;  ///< (p)
    Field2D C;                   ///< (p, x), zero unless corrections_enabled
    Field2D D;                   ///< (p, x), zero unless corrections_enabled
    bool corrections_enabled = false;
    KernelDiagnostics diagnostics;
};

struct KernelBuildOptions {
    bool corrections_enabled = false;
    double correction_prefactor = 1.0;
    unsigned workers = 1;
};

/// Evaluates the kernels on every (p, x) node. The corrections use the
/// local-equilibrium distribution as the model G^>.
/// Bit-identical output for any worker count.
KernelSet build_kernels(const KernelEvaluator& evaluator, const UniformAxis& p_axis, const UniformAxis& x_axis,
                        const TemperatureProfile& profile, const EquilibriumField& equilibrium,
                        const KernelBuildOptions& options = {});

} // namespace thermoqbe

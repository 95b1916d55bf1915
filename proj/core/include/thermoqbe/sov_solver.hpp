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
/// Separation-of-variables solver for the damped transport equation
///
///   df/dt + (p/m + C) df/dx + (F + D + A f') df/dp = B (df'/dp) f + E f' f,
///
/// with f = N P(p) X(x) T(t), f' = 1 - f and F the force on an electron.
/// Each factor solves a first-order equation whose integrand still depends
/// on the other two variables; those are pinned at reference points
/// (p_ref, x_ref, t_ref) and the three factors are reconciled by a
/// fixed-point loop on the decay rate lambda.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thermoqbe/grid.hpp"
#include "thermoqbe/local_equilibrium.hpp"
#include "thermoqbe/scattering_kernels.hpp"

namespace thermoqbe {

struct SimulationGrid {
    UniformAxis p; ///< symmetric, odd node count (contains p = 0)
    UniformAxis x; ///< [0, L]
    UniformAxis t; ///< [0, t_max], internal time units

    /// Throws ConfigError listing every violated invariant.
    static SimulationGrid make(double p_max, std::size_t n_p, double length, std::size_t n_x, double t_max,
                               std::size_t n_t);

    /// Throws ConfigError unless p_max >= 3 p_F.
    void require_fermi_coverage(double p_fermi) const;
};

/// Uniform applied electric field.
struct ExternalField {
    double field_V_per_m = -1.0e7;

    /// Coefficient of df/dp in the transport equation: the force on an
    /// electron (charge -e), -e E, in eV/nm. Positive for E < 0.
    double drift_force() const noexcept;
};

enum class Closure {
    reference_point,  ///< integrands evaluated at (p_ref, x_ref, t_ref)
    weighted_average, ///< X integrand averaged over p > 0 with weight f0(p, x_ref)
};

enum class DenominatorPolicy {
    clamp, ///< clamp |H| at denominator_cap and report
    error, ///< throw SolverError naming the singular momentum
};

struct SolverOptions {
    std::optional<double> lambda0; ///< default |B(p_ref, x_ref) df0/dp(p_ref, x_ref)|
    double tol = 1e-8;
    int max_iters = 50;
    std::optional<double> p_ref; ///< default: Fermi momentum
    std::optional<double> x_ref; ///< default: L/2
    Closure closure = Closure::reference_point;
    DenominatorPolicy denominator_policy = DenominatorPolicy::clamp;
    double denominator_cap = 1.0e3;
    double log_cap = 700.0;              ///< largest |log X| or |log P| before overflow is declared
    std::optional<double> target_density; ///< n0 at (x_ref, t = 0); default: equilibrium density there
};

/// Grid-snapped reference point.
struct ReferencePoint {
    std::size_t ip = 0;
    std::size_t ix = 0;
    double p = 0.0;
    double x = 0.0;
};

/// Everything the factor equations read. Non-owning; outlives no call.
struct SeparatedProblem {
    const SimulationGrid& grid;
    const KernelSet& kernels;
    const EquilibriumField& equilibrium;
    ExternalField field;
    ReferencePoint ref;

    double force(std::size_t ip, std::size_t ix) const noexcept;    ///< F + D + A f0
    double velocity(std::size_t ip, std::size_t ix) const noexcept; ///< p/m + C
};

/// Snaps the requested references to grid nodes. Throws ConfigError when
/// p_ref lands on p = 0 (the x-equation divides by the velocity).
ReferencePoint resolve_reference(const SimulationGrid& grid, double p_ref, double x_ref);

struct MomentumFactor {
    std::vector<double> values;    ///< P(p)
    std::vector<double> log_slope; ///< d ln P / dp
};

struct SpatialFactor {
    std::vector<double> values;    ///< X(x)
    std::vector<double> log_slope; ///< d ln X / dx
};

struct TemporalFactor {
    std::vector<double> values; ///< T(t) = exp(K t)
    double rate = 0.0;          ///< K; the next lambda is -K
};

struct DenominatorReport {
    std::size_t singular_nodes = 0;
    std::optional<double> first_singular_p;
    std::size_t clamped_nodes = 0;
};

/// X(x) = exp(int_0^x G), G = [lambda P - F_eff dP/dp + B df0/dp P] / (v P) at p_ref.
/// Throws SolverError if |log X| exceeds the cap (message carries the x).
SpatialFactor solve_X(const SeparatedProblem& problem, const MomentumFactor& P, double lambda,
                      const SolverOptions& options = {});

/// P(p) = f0(p_ref, x_ref) exp(int_{p_ref}^p H),
/// H = [B df0/dp + lambda - v G(x_ref)] / F_eff at x_ref, integrated outward from p_ref.
/// When F_eff vanishes identically the momentum equation is vacuous and
/// `previous` is returned unchanged.
MomentumFactor solve_P(const SeparatedProblem& problem, const SpatialFactor& X, double lambda,
                       const MomentumFactor& previous, const SolverOptions& options = {},
                       DenominatorReport* report = nullptr);

/// K = [B df0/dp P X - v P dX/dx - F_eff X dP/dp] / (P X) at (p_ref, x_ref);
/// T(t) = exp(K t). Throws SolverError when P X vanishes at the reference.
TemporalFactor solve_T(const SeparatedProblem& problem, const MomentumFactor& P, const SpatialFactor& X);

/// Initial momentum factor: the equilibrium slice f0(p, x_ref).
MomentumFactor equilibrium_momentum_factor(const SeparatedProblem& problem);

struct ResidualNorms {
    double l2 = 0.0;  ///< root-mean-square over interior nodes
    double max = 0.0; ///< max |R| over interior nodes
};

struct SolutionFlags {
    bool converged = false;
    bool growing = false; ///< K > 0
    DenominatorReport denominator;
    double min_f = 0.0;
    double max_f = 0.0;
    double min_ratio_to_equilibrium = 0.0; ///< min of P/f0 over nodes with f0 >= 0.01
    double max_ratio_to_equilibrium = 0.0;
    bool bounds_ok = true; ///< min f >= -0.05, max f <= 1.05, P/f0 within [0.5, 2]
};

struct SeparatedSolution {
    MomentumFactor P;
    SpatialFactor X;
    TemporalFactor T;
    double norm = 1.0; ///< N, from n(x_ref, 0) = n0
    double lambda = 0.0;
    ReferencePoint ref;
    int iterations = 0;
    double last_change = 0.0;
    std::vector<double> lambda_history; ///< lambda0 first
    ResidualNorms residual;
    SolutionFlags flags;

    /// Relative change of lambda over the final iteration.
    double lambda_relative_change() const noexcept;
};

/// Assembles f = N P X T on the full grid.
Field3D assemble(const SeparatedSolution& solution);

/// Hole distribution f' = 1 - f, node by node.
Field3D hole_field(const Field3D& f);

/// Iterates solve_X -> solve_P -> solve_T until the max-norm change of the
/// three factors drops below tol. A non-converged run returns its last
/// iterate with flags.converged = false. NaN in any iterate throws
/// SolverError carrying the iteration index.
SeparatedSolution fixed_point_solve(const SeparatedProblem& problem, const SolverOptions& options = {});

/// Residual of the transport equation on interior nodes, centered differences:
///   R = df/dt + (p/m + C) df/dx + (F + D + A f') df/dp - B (df'/dp) f - E f' f.
/// Throws DomainError if f and f' differ in shape or do not match the grid.
ResidualNorms residual(const Field3D& f, const Field3D& f_hole, const SimulationGrid& grid, const KernelSet& kernels,
                       const EquilibriumField& equilibrium, const ExternalField& field);

} // namespace thermoqbe

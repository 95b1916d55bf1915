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

#include "thermoqbe/sov_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/numerics.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

SimulationGrid SimulationGrid::make(double p_max, std::size_t n_p, double length, std::size_t n_x, double t_max,
                                    std::size_t n_t)
{
    std::vector<std::string> bad;
    if (!(p_max > 0.0))
        bad.push_back(fmt::format("p_max must be > 0, got {}", p_max));
    if (n_p < 3 || n_p % 2 == 0)
        bad.push_back(fmt::format("n_p must be odd and >= 3, got {}", n_p));
    if (!(length > 0.0))
        bad.push_back(fmt::format("length must be > 0, got {}", length));
    if (n_x < 3)
        bad.push_back(fmt::format("n_x must be >= 3, got {}", n_x));
    if (!(t_max > 0.0))
        bad.push_back(fmt::format("t_max must be > 0, got {}", t_max));
    if (n_t < 3)
        bad.push_back(fmt::format("n_t must be >= 3, got {}", n_t));
    if (!bad.empty())
        throw ConfigError(std::move(bad));
    return {UniformAxis(-p_max, p_max, n_p), UniformAxis(0.0, length, n_x), UniformAxis(0.0, t_max, n_t)};
}

void SimulationGrid::require_fermi_coverage(double p_fermi) const
{
    if (!(p.hi() >= 3.0 * p_fermi))
        throw ConfigError({fmt::format("p_max = {} does not cover 3 p_F = {}", p.hi(), 3.0 * p_fermi)});
}

double ExternalField::drift_force() const noexcept { return -units::field_to_internal(field_V_per_m); }

double SeparatedProblem::force(std::size_t ip, std::size_t ix) const noexcept
{
    double F = field.drift_force() + kernels.A(ip, ix) * equilibrium.f0(ip, ix);
    if (kernels.corrections_enabled)
        F += kernels.D(ip, ix);
    return F;
}

double SeparatedProblem::velocity(std::size_t ip, std::size_t ix) const noexcept
{
    double v = grid.p[ip] / equilibrium.mass;
    if (kernels.corrections_enabled)
        v += kernels.C(ip, ix);
    return v;
}

ReferencePoint resolve_reference(const SimulationGrid& grid, double p_ref, double x_ref)
{
    std::vector<std::string> bad;
    if (!(p_ref >= grid.p.lo() && p_ref <= grid.p.hi()))
        bad.push_back(fmt::format("p_ref = {} outside the momentum grid", p_ref));
    if (!(x_ref >= grid.x.lo() && x_ref <= grid.x.hi()))
        bad.push_back(fmt::format("x_ref = {} outside [0, L]", x_ref));
    if (!bad.empty())
        throw ConfigError(std::move(bad));
    ReferencePoint r;
    r.ip = grid.p.nearest(p_ref);
    r.ix = grid.x.nearest(x_ref);
    r.p = grid.p[r.ip];
    r.x = grid.x[r.ix];
    if (r.p == 0.0)
        throw ConfigError({"p_ref snaps to p = 0, where the reference velocity vanishes"});
    return r;
}

namespace {

void check_shapes(const SeparatedProblem& pr)
{
    const std::size_t np = pr.grid.p.size();
    const std::size_t nx = pr.grid.x.size();
    if (pr.kernels.A.rows() != np || pr.kernels.A.cols() != nx || pr.equilibrium.f0.rows() != np ||
        pr.equilibrium.f0.cols() != nx)
        throw DomainError("separated problem: kernel or equilibrium shape does not match the grid");
}

double reference_velocity(const SeparatedProblem& pr)
{
    const double v = pr.velocity(pr.ref.ip, pr.ref.ix);
    if (v == 0.0 || !std::isfinite(v))
        throw ConfigError({fmt::format("reference velocity vanishes at p_ref = {}", pr.ref.p)});
    return v;
}

std::vector<double> exp_of(const std::vector<double>& log_values, double cap, const UniformAxis& axis,
                           const char* what)
{
    std::vector<double> out(log_values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(log_values[i]))
            throw SolverError(fmt::format("log {} is not finite at {} = {}", what, what[0] == 'X' ? "x" : "p",
                                          axis[i]));
        if (std::abs(log_values[i]) > cap)
            throw SolverError(fmt::format("|log {}| = {:.6g} exceeds the cap {} at {} = {:.6g}", what,
                                          std::abs(log_values[i]), cap, what[0] == 'X' ? "x" : "p", axis[i]));
        out[i] = std::exp(log_values[i]);
    }
    return out;
}

} // namespace

MomentumFactor equilibrium_momentum_factor(const SeparatedProblem& problem)
{
    check_shapes(problem);
    const std::size_t np = problem.grid.p.size();
    const std::size_t ix = problem.ref.ix;
    MomentumFactor P;
    P.values.resize(np);
    P.log_slope.resize(np);
    for (std::size_t ip = 0; ip < np; ++ip) {
        const double f = problem.equilibrium.f0(ip, ix);
        P.values[ip] = f;
        P.log_slope[ip] = f > 0.0 ? problem.equilibrium.df0_dp(ip, ix) / f : 0.0;
    }
    return P;
}

SpatialFactor solve_X(const SeparatedProblem& problem, const MomentumFactor& P, double lambda,
                      const SolverOptions& options)
{
    check_shapes(problem);
    const auto& g = problem.grid;
    const auto& ks = problem.kernels;
    const auto& eq = problem.equilibrium;
    const std::size_t nx = g.x.size();
    if (P.values.size() != g.p.size() || P.log_slope.size() != g.p.size())
        throw DomainError("solve_X: momentum factor does not match the grid");

    SpatialFactor X;
    X.log_slope.assign(nx, 0.0);

    // G_p(x) = [lambda - F_eff dlnP/dp + B df0/dp] / v, the bracket divided through by P.
    auto integrand = [&](std::size_t ip, std::size_t ix) {
        return (lambda - problem.force(ip, ix) * P.log_slope[ip] + ks.B(ip, ix) * eq.df0_dp(ip, ix)) /
               problem.velocity(ip, ix);
    };

    if (options.closure == Closure::reference_point) {
        reference_velocity(problem);
        for (std::size_t ix = 0; ix < nx; ++ix)
            X.log_slope[ix] = integrand(problem.ref.ip, ix);
    } else {
        const std::size_t np = g.p.size();
        for (std::size_t ix = 0; ix < nx; ++ix) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t ip = np / 2 + 1; ip < np; ++ip) {
                const double w = eq.f0(ip, problem.ref.ix);
                if (w == 0.0 || problem.velocity(ip, ix) == 0.0)
                    continue;
                num += w * integrand(ip, ix);
                den += w;
            }
            if (!(den > 0.0))
                throw SolverError("weighted closure: equilibrium weight vanishes for p > 0");
            X.log_slope[ix] = num / den;
        }
    }

    const auto logX = numerics::cumulative_trapezoid(X.log_slope, g.x.step());
    X.values = exp_of(logX, options.log_cap, g.x, "X");
    return X;
}

MomentumFactor solve_P(const SeparatedProblem& problem, const SpatialFactor& X, double lambda,
                       const MomentumFactor& previous, const SolverOptions& options, DenominatorReport* report)
{
    check_shapes(problem);
    const auto& g = problem.grid;
    const auto& ks = problem.kernels;
    const auto& eq = problem.equilibrium;
    const std::size_t np = g.p.size();
    const std::size_t ix = problem.ref.ix;
    if (X.values.size() != g.x.size() || X.log_slope.size() != g.x.size())
        throw DomainError("solve_P: spatial factor does not match the grid");

    std::vector<double> den(np);
    bool all_zero = true;
    for (std::size_t ip = 0; ip < np; ++ip) {
        den[ip] = problem.force(ip, ix);
        all_zero = all_zero && den[ip] == 0.0;
    }
    DenominatorReport local;
    if (all_zero) {
        // No drift in p: the momentum equation carries no information.
        if (report)
            *report = local;
        return previous;
    }

    for (std::size_t ip = 0; ip < np; ++ip) {
        const bool crosses = den[ip] == 0.0 || (ip + 1 < np && std::signbit(den[ip]) != std::signbit(den[ip + 1]) &&
                                                 den[ip + 1] != 0.0);
        if (crosses) {
            ++local.singular_nodes;
            if (!local.first_singular_p)
                local.first_singular_p = g.p[ip];
        }
    }
    if (local.singular_nodes > 0 && options.denominator_policy == DenominatorPolicy::error)
        throw SolverError(fmt::format("momentum denominator F + A f0 vanishes near p = {:.6g}",
                                      *local.first_singular_p));

    const double dlnX = X.log_slope[ix];
    MomentumFactor P;
    P.log_slope.resize(np);
    const double cap = options.denominator_cap;
    for (std::size_t ip = 0; ip < np; ++ip) {
        const double num = ks.B(ip, ix) * eq.df0_dp(ip, ix) + lambda - problem.velocity(ip, ix) * dlnX;
        double H = den[ip] != 0.0 ? num / den[ip] : std::copysign(std::numeric_limits<double>::infinity(), num);
        if (!(std::abs(H) <= cap)) {
            if (std::isnan(H))
                H = 0.0;
            H = std::clamp(H, -cap, cap);
            ++local.clamped_nodes;
        }
        P.log_slope[ip] = H;
    }

    // A carries sgn(p), so H jumps at p = 0. Each side is integrated as a
    // smooth function ending in its one-sided limit at p = 0, where the node
    // value built on A(0) = 0 belongs to neither side.
    const double h = g.p.step();
    const std::size_t i0 = np / 2;
    std::vector<double> cell(np - 1);
    if (np >= 7) {
        const double a0 = 2.0 * ks.A(i0 + 1, ix) - ks.A(i0 + 2, ix);
        const double num = ks.B(i0, ix) * eq.df0_dp(i0, ix) + lambda - problem.velocity(i0, ix) * dlnX;
        auto one_sided = [&](double a) {
            const double d = den[i0] + a * eq.f0(i0, ix);
            const double H = d != 0.0 ? num / d : std::copysign(std::numeric_limits<double>::infinity(), num);
            return std::isnan(H) ? 0.0 : std::clamp(H, -cap, cap);
        };
        std::vector<double> side(P.log_slope.begin(), P.log_slope.begin() + static_cast<std::ptrdiff_t>(i0 + 1));
        side.back() = one_sided(-a0);
        const auto below = numerics::cell_integrals(side, h);
        const double left_limit = side.back();
        side.assign(P.log_slope.begin() + static_cast<std::ptrdiff_t>(i0), P.log_slope.end());
        side.front() = one_sided(a0);
        const auto above = numerics::cell_integrals(side, h);
        std::copy(below.begin(), below.end(), cell.begin());
        std::copy(above.begin(), above.end(), cell.begin() + static_cast<std::ptrdiff_t>(i0));
        P.log_slope[i0] = 0.5 * (left_limit + side.front());
    } else {
        for (std::size_t ip = 0; ip + 1 < np; ++ip)
            cell[ip] = 0.5 * h * (P.log_slope[ip] + P.log_slope[ip + 1]);
    }

    const double anchor = eq.f0(problem.ref.ip, ix);
    if (!(anchor > 0.0))
        throw SolverError(fmt::format("equilibrium vanishes at the reference point p = {}", problem.ref.p));
    std::vector<double> logP(np, 0.0);
    for (std::size_t ip = problem.ref.ip + 1; ip < np; ++ip)
        logP[ip] = logP[ip - 1] + cell[ip - 1];
    for (std::size_t ip = problem.ref.ip; ip-- > 0;)
        logP[ip] = logP[ip + 1] - cell[ip];
    P.values = exp_of(logP, options.log_cap, g.p, "P");
    for (double& v : P.values)
        v *= anchor;
    if (report)
        *report = local;
    return P;
}

TemporalFactor solve_T(const SeparatedProblem& problem, const MomentumFactor& P, const SpatialFactor& X)
{
    check_shapes(problem);
    const auto& r = problem.ref;
    const double PX = P.values.at(r.ip) * X.values.at(r.ix);
    if (PX == 0.0 || !std::isfinite(PX))
        throw SolverError("P X vanishes at the reference point");
    TemporalFactor T;
    T.rate = problem.kernels.B(r.ip, r.ix) * problem.equilibrium.df0_dp(r.ip, r.ix) -
             problem.velocity(r.ip, r.ix) * X.log_slope[r.ix] - problem.force(r.ip, r.ix) * P.log_slope[r.ip];
    const auto& t = problem.grid.t;
    T.values.resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        T.values[k] = std::exp(T.rate * t[k]);
    return T;
}

double SeparatedSolution::lambda_relative_change() const noexcept
{
    const std::size_t n = lambda_history.size();
    if (n < 2)
        return 0.0;
    const double prev = lambda_history[n - 2];
    const double diff = std::abs(lambda_history[n - 1] - prev);
    return prev != 0.0 ? diff / std::abs(prev) : diff;
}

Field3D assemble(const SeparatedSolution& s)
{
    const std::size_t np = s.P.values.size();
    const std::size_t nx = s.X.values.size();
    const std::size_t nt = s.T.values.size();
    Field3D f(np, nx, nt);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            const double px = s.norm * s.P.values[i] * s.X.values[j];
            for (std::size_t k = 0; k < nt; ++k)
                f(i, j, k) = px * s.T.values[k];
        }
    return f;
}

Field3D hole_field(const Field3D& f)
{
    Field3D h(f.np(), f.nx(), f.nt());
    auto src = f.data();
    auto dst = h.data();
    std::transform(src.begin(), src.end(), dst.begin(), [](double v) { return 1.0 - v; });
    return h;
}

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool all_finite(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

SolutionFlags compute_flags(const SeparatedProblem& pr, const SeparatedSolution& s, const Field3D& f)
{
    SolutionFlags fl;
    const auto d = f.data();
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    fl.min_f = *lo;
    fl.max_f = *hi;
    fl.min_ratio_to_equilibrium = std::numeric_limits<double>::infinity();
    fl.max_ratio_to_equilibrium = -std::numeric_limits<double>::infinity();
    for (std::size_t ip = 0; ip < s.P.values.size(); ++ip) {
        const double f0 = pr.equilibrium.f0(ip, pr.ref.ix);
        if (f0 < 0.01)
            continue;
        const double r = s.P.values[ip] / f0;
        fl.min_ratio_to_equilibrium = std::min(fl.min_ratio_to_equilibrium, r);
        fl.max_ratio_to_equilibrium = std::max(fl.max_ratio_to_equilibrium, r);
    }
    fl.growing = s.T.rate > 0.0;
    fl.bounds_ok = fl.min_f >= -0.05 && fl.max_f <= 1.05 && fl.min_ratio_to_equilibrium >= 0.5 &&
                   fl.max_ratio_to_equilibrium <= 2.0;
    return fl;
}

} // namespace

SeparatedSolution fixed_point_solve(const SeparatedProblem& problem, const SolverOptions& options)
{
    check_shapes(problem);
    if (options.max_iters < 1)
        throw ConfigError({"max_iters must be >= 1"});
    if (!(options.tol > 0.0))
        throw ConfigError({"tol must be > 0"});
    const auto& r = problem.ref;
    const auto& g = problem.grid;
    reference_velocity(problem);

    double lambda = options.lambda0.value_or(
        std::abs(problem.kernels.B(r.ip, r.ix) * problem.equilibrium.df0_dp(r.ip, r.ix)));
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw ConfigError({fmt::format("lambda0 must be finite and >= 0, got {}", lambda)});

    SeparatedSolution cur;
    cur.ref = r;
    cur.P = equilibrium_momentum_factor(problem);
    cur.X.values.assign(g.x.size(), 1.0);
    cur.X.log_slope.assign(g.x.size(), 0.0);
    cur.T.rate = -lambda;
    cur.T.values.resize(g.t.size());
    for (std::size_t k = 0; k < g.t.size(); ++k)
        cur.T.values[k] = std::exp(-lambda * g.t[k]);
    cur.lambda = lambda;
    cur.lambda_history.push_back(lambda);

    SeparatedSolution best;
    double best_change = std::numeric_limits<double>::infinity();
    DenominatorReport denom;
    bool converged = false;

    for (int it = 1; it <= options.max_iters; ++it) {
        SeparatedSolution next = cur;
        try {
            next.X = solve_X(problem, cur.P, cur.lambda, options);
            next.P = solve_P(problem, next.X, cur.lambda, cur.P, options, &denom);
            next.T = solve_T(problem, next.P, next.X);
        } catch (const SolverError& e) {
            throw SolverError(fmt::format("iteration {}: {}", it, e.what()), it);
        }
        if (!all_finite(next.X.values) || !all_finite(next.P.values) || !all_finite(next.T.values) ||
            !std::isfinite(next.T.rate))
            throw SolverError(fmt::format("non-finite iterate at iteration {}", it), it);
        next.lambda = 0.0 - next.T.rate;
        next.lambda_history.push_back(next.lambda);
        next.iterations = it;
        next.last_change = std::max({max_abs_diff(next.X.values, cur.X.values),
                                     max_abs_diff(next.P.values, cur.P.values),
                                     max_abs_diff(next.T.values, cur.T.values)});
        cur = std::move(next);
        if (cur.last_change <= best_change) {
            best_change = cur.last_change;
            best = cur;
        }
        if (cur.last_change < options.tol) {
            converged = true;
            break;
        }
    }

    SeparatedSolution out = converged ? std::move(cur) : std::move(best);
    if (!converged) {
        // Keep the full lambda sequence even when an earlier iterate is returned.
        out.lambda_history = cur.lambda_history;
        out.iterations = cur.iterations;
    }

    const std::size_t ix = r.ix;
    const double n_sep = numerics::trapezoid(out.P.values, g.p.step()) / (2.0 * std::numbers::pi) * out.X.values[ix];
    double n_target = 0.0;
    if (options.target_density) {
        n_target = *options.target_density;
    } else {
        const auto col = problem.equilibrium.f0.column(ix);
        n_target = numerics::trapezoid(col, g.p.step()) / (2.0 * std::numbers::pi);
    }
    if (!(n_sep > 0.0) || !(n_target > 0.0))
        throw SolverError("cannot normalize: separated density at x_ref is not positive", out.iterations);
    out.norm = n_target / n_sep;

    const Field3D f = assemble(out);
    const auto fd = f.data();
    if (!std::all_of(fd.begin(), fd.end(), [](double v) { return std::isfinite(v); }))
        throw SolverError("assembled distribution is not finite", out.iterations);
    const Field3D fh = hole_field(f);
    out.residual = residual(f, fh, g, problem.kernels, problem.equilibrium, problem.field);
    out.flags = compute_flags(problem, out, f);
    out.flags.converged = converged;
    out.flags.denominator = denom;
    return out;
}

ResidualNorms residual(const Field3D& f, const Field3D& fh, const SimulationGrid& grid, const KernelSet& kernels,
                       const EquilibriumField& equilibrium, const ExternalField& field)
{
    const std::size_t np = grid.p.size();
    const std::size_t nx = grid.x.size();
    const std::size_t nt = grid.t.size();
    if (f.np() != np || f.nx() != nx || f.nt() != nt || !f.same_shape(fh))
        throw DomainError("residual: distribution shape does not match the grid");
    if (kernels.A.rows() != np || kernels.A.cols() != nx || kernels.E_gain.size() != np)
        throw DomainError("residual: kernel shape does not match the grid");
    if (np < 3 || nx < 3 || nt < 3)
        throw DomainError("residual needs at least 3 nodes per axis");

    const double F = field.drift_force();
    const double m = equilibrium.mass;
    const double ip2 = 0.5 / grid.p.step();
    const double ix2 = 0.5 / grid.x.step();
    const double it2 = 0.5 / grid.t.step();
    const bool corr = kernels.corrections_enabled;

    double sum = 0.0;
    double mx = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < np; ++i) {
        const double v0 = grid.p[i] / m;
        for (std::size_t j = 1; j + 1 < nx; ++j) {
            const double A = kernels.A(i, j);
            const double B = kernels.B(i, j);
            const double v = corr ? v0 + kernels.C(i, j) : v0;
            const double Fd = corr ? F + kernels.D(i, j) : F;
            for (std::size_t k = 1; k + 1 < nt; ++k) {
                const double ft = (f(i, j, k + 1) - f(i, j, k - 1)) * it2;
                const double fx = (f(i, j + 1, k) - f(i, j - 1, k)) * ix2;
                const double fp = (f(i + 1, j, k) - f(i - 1, j, k)) * ip2;
                const double fhp = (fh(i + 1, j, k) - fh(i - 1, j, k)) * ip2;
                const double ff = f(i, j, k);
                const double fhh = fh(i, j, k);
                const double R = ft + v * fx + (Fd + A * fhh) * fp - B * fhp * ff - kernels.E_gain[i] * fhh * ff;
                sum += R * R;
                mx = std::max(mx, std::abs(R));
                ++count;
            }
        }
    }
    return {std::sqrt(sum / static_cast<double>(count)), mx};
}

} // namespace thermoqbe

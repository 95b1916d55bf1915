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

#include "thermoqbe/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "thermoqbe/errors.hpp"
#include "thermoqbe/units.hpp"

namespace thermoqbe {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> s{
        {"bath", {"sound_speed", "debye_cutoff", "coupling_g2", "delta"}},
        {"quadrature", {"intervals", "rel_tol"}},
        {"profile", {"T0_kelvin", "gradient_k_per_nm", "length_nm"}},
        {"band", {"density_n0", "mu_eV", "mass"}},
        {"field", {"field_V_per_m"}},
        {"grid", {"n_p", "n_x", "n_t", "p_max", "t_max_fs"}},
        {"solver",
         {"lambda0", "tol", "max_iters", "p_ref", "x_ref", "closure", "denominator_policy", "denominator_cap",
          "log_cap", "residual_threshold"}},
        {"corrections", {"enabled", "prefactor"}},
        {"output", {"dir", "emit_p_resolved", "snapshot_t_index"}},
        {"checks",
         {"damping_monotone_in_T0", "thermal_current_monotone_in_T0", "current_increasing_in_x",
          "density_increasing_in_x", "boundary_exception_fraction"}},
    };
    return s;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::vector<std::string>& violations() { return bad_; }

    void check_keys()
    {
        for (const auto& [section, body] : tree_) {
            const auto it = schema().find(section);
            if (body.empty()) {
                bad_.push_back(fmt::format("{}: key outside any section", section));
                continue;
            }
            if (it == schema().end()) {
                bad_.push_back(fmt::format("[{}]: unknown section", section));
                continue;
            }
            for (const auto& [key, value] : body)
                if (!it->second.contains(key))
                    bad_.push_back(fmt::format("{}.{}: unknown key", section, key));
        }
    }

    std::optional<std::string> raw(const std::string& section, const std::string& key) const
    {
        const auto s = tree_.get_child_optional(section);
        if (!s)
            return std::nullopt;
        const auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v)
            return std::nullopt;
        return boost::algorithm::trim_copy(*v);
    }

    void number(const std::string& section, const std::string& key, double& out)
    {
        if (const auto v = raw(section, key))
            parse_double(section, key, *v, out);
    }

    void optional_number(const std::string& section, const std::string& key, std::optional<double>& out)
    {
        const auto v = raw(section, key);
        if (!v)
            return;
        if (boost::algorithm::iequals(*v, "auto")) {
            out.reset();
            return;
        }
        double d = 0.0;
        if (parse_double(section, key, *v, d))
            out = d;
    }

    void count(const std::string& section, const std::string& key, std::size_t& out)
    {
        const auto v = raw(section, key);
        if (!v)
            return;
        long long n = 0;
        const auto* end = v->data() + v->size();
        const auto [ptr, ec] = std::from_chars(v->data(), end, n);
        if (ec != std::errc() || ptr != end || n < 0)
            bad_.push_back(fmt::format("{}.{}: expected a non-negative integer, got '{}'", section, key, *v));
        else
            out = static_cast<std::size_t>(n);
    }

    void integer(const std::string& section, const std::string& key, int& out)
    {
        std::size_t n = static_cast<std::size_t>(std::max(out, 0));
        const auto before = bad_.size();
        count(section, key, n);
        if (bad_.size() == before)
            out = static_cast<int>(n);
    }

    void flag(const std::string& section, const std::string& key, bool& out)
    {
        const auto v = raw(section, key);
        if (!v)
            return;
        const auto s = boost::algorithm::to_lower_copy(*v);
        if (s == "true" || s == "yes" || s == "on" || s == "1")
            out = true;
        else if (s == "false" || s == "no" || s == "off" || s == "0")
            out = false;
        else
            bad_.push_back(fmt::format("{}.{}: expected true/false, got '{}'", section, key, *v));
    }

    void list(const std::string& section, const std::string& key, std::vector<double>& out)
    {
        const auto v = raw(section, key);
        if (!v)
            return;
        std::vector<std::string> parts;
        boost::algorithm::split(parts, *v, boost::algorithm::is_any_of(","));
        std::vector<double> values;
        for (auto& p : parts) {
            boost::algorithm::trim(p);
            double d = 0.0;
            if (!parse_double(section, key, p, d))
                return;
            values.push_back(d);
        }
        out = std::move(values);
    }

    template <class E>
    void choice(const std::string& section, const std::string& key, E& out,
                std::initializer_list<std::pair<const char*, E>> options)
    {
        const auto v = raw(section, key);
        if (!v)
            return;
        std::vector<std::string> names;
        for (const auto& [name, value] : options) {
            if (*v == name) {
                out = value;
                return;
            }
            names.emplace_back(name);
        }
        bad_.push_back(fmt::format("{}.{}: expected one of {}, got '{}'", section, key, fmt::join(names, ", "), *v));
    }

private:
    bool parse_double(const std::string& section, const std::string& key, const std::string& v, double& out)
    {
        double d = 0.0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, d);
        if (ec != std::errc() || ptr != end || v.empty() || !std::isfinite(d)) {
            bad_.push_back(fmt::format("{}.{}: expected a finite number, got '{}'", section, key, v));
            return false;
        }
        out = d;
        return true;
    }

    const pt::ptree& tree_;
    std::vector<std::string> bad_;
};

std::string closure_name(Closure c)
{
    return c == Closure::reference_point ? "reference_point" : "weighted_average";
}

std::string policy_name(DenominatorPolicy p) { return p == DenominatorPolicy::clamp ? "clamp" : "error"; }

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : "auto"; }

} // namespace

RunConfig parse_config(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({fmt::format("line {}: {}", e.line(), e.message())});
    }

    RunConfig c;
    Reader r(tree);
    r.check_keys();

    r.number("bath", "sound_speed", c.bath.sound_speed);
    r.number("bath", "debye_cutoff", c.bath.debye_cutoff);
    r.number("bath", "coupling_g2", c.bath.coupling_g2);
    r.number("bath", "delta", c.bath.delta);
    r.count("quadrature", "intervals", c.quadrature.intervals);
    r.number("quadrature", "rel_tol", c.quadrature.rel_tol);

    r.list("profile", "T0_kelvin", c.T0_kelvin);
    r.number("profile", "gradient_k_per_nm", c.gradient_k_per_nm);
    r.number("profile", "length_nm", c.length_nm);

    r.number("band", "density_n0", c.density_n0);
    r.optional_number("band", "mu_eV", c.mu_eV);
    r.number("band", "mass", c.mass);

    r.number("field", "field_V_per_m", c.field_V_per_m);

    r.count("grid", "n_p", c.n_p);
    r.count("grid", "n_x", c.n_x);
    r.count("grid", "n_t", c.n_t);
    r.number("grid", "p_max", c.p_max);
    r.number("grid", "t_max_fs", c.t_max_fs);

    r.optional_number("solver", "lambda0", c.solver.lambda0);
    r.number("solver", "tol", c.solver.tol);
    r.integer("solver", "max_iters", c.solver.max_iters);
    r.optional_number("solver", "p_ref", c.solver.p_ref);
    r.optional_number("solver", "x_ref", c.solver.x_ref);
    r.choice("solver", "closure", c.solver.closure,
             {{"reference_point", Closure::reference_point}, {"weighted_average", Closure::weighted_average}});
    r.choice("solver", "denominator_policy", c.solver.denominator_policy,
             {{"clamp", DenominatorPolicy::clamp}, {"error", DenominatorPolicy::error}});
    r.number("solver", "denominator_cap", c.solver.denominator_cap);
    r.number("solver", "log_cap", c.solver.log_cap);
    r.number("solver", "residual_threshold", c.residual_threshold);

    r.flag("corrections", "enabled", c.corrections_enabled);
    r.number("corrections", "prefactor", c.correction_prefactor);

    if (const auto dir = r.raw("output", "dir"))
        c.output_dir = *dir;
    r.flag("output", "emit_p_resolved", c.emit_p_resolved);
    r.count("output", "snapshot_t_index", c.snapshot_t_index);

    r.flag("checks", "damping_monotone_in_T0", c.checks.damping_monotone_in_T0);
    r.flag("checks", "thermal_current_monotone_in_T0", c.checks.thermal_current_monotone_in_T0);
    r.flag("checks", "current_increasing_in_x", c.checks.current_increasing_in_x);
    r.flag("checks", "density_increasing_in_x", c.checks.density_increasing_in_x);
    r.number("checks", "boundary_exception_fraction", c.checks.boundary_exception_fraction);

    auto bad = std::move(r.violations());
    for (auto& v : validate(c))
        bad.push_back(std::move(v));
    if (!bad.empty())
        throw ConfigError(std::move(bad));
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError({fmt::format("cannot read config file '{}'", path.string())});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> validate(const RunConfig& c)
{
    std::vector<std::string> bad;
    auto need = [&](bool ok, std::string msg) {
        if (!ok)
            bad.push_back(std::move(msg));
    };

    need(c.bath.sound_speed > 0.0, fmt::format("bath.sound_speed must be > 0, got {}", c.bath.sound_speed));
    need(c.bath.debye_cutoff > 0.0, fmt::format("bath.debye_cutoff must be > 0, got {}", c.bath.debye_cutoff));
    need(c.bath.coupling_g2 >= 0.0, fmt::format("bath.coupling_g2 must be >= 0, got {}", c.bath.coupling_g2));
    need(c.bath.delta > 0.0, fmt::format("bath.delta must be > 0, got {}", c.bath.delta));
    need(c.quadrature.intervals >= 4 && c.quadrature.intervals % 4 == 0,
         fmt::format("quadrature.intervals must be a positive multiple of 4, got {}", c.quadrature.intervals));
    need(c.quadrature.rel_tol > 0.0, fmt::format("quadrature.rel_tol must be > 0, got {}", c.quadrature.rel_tol));

    need(!c.T0_kelvin.empty(), "profile.T0_kelvin: at least one temperature is required");
    need(c.length_nm > 0.0, fmt::format("profile.length_nm must be > 0, got {}", c.length_nm));
    for (double T0 : c.T0_kelvin) {
        if (!(T0 > 0.0)) {
            bad.push_back(fmt::format("profile.T0_kelvin: temperatures must be > 0 K, got {}", T0));
            continue;
        }
        const double TL = T0 + c.gradient_k_per_nm * c.length_nm;
        need(TL > 0.0, fmt::format("profile: T(L) = {} K <= 0 for T0_kelvin = {} and gradient_k_per_nm = {}", TL,
                                   T0, c.gradient_k_per_nm));
    }
    {
        auto sorted = c.T0_kelvin;
        std::sort(sorted.begin(), sorted.end());
        need(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
             "profile.T0_kelvin: temperatures must be distinct");
    }

    need(c.density_n0 > 0.0, fmt::format("band.density_n0 must be > 0, got {}", c.density_n0));
    need(c.mass > 0.0, fmt::format("band.mass must be > 0, got {}", c.mass));
    if (c.mu_eV)
        need(*c.mu_eV > 0.0, fmt::format("band.mu_eV must be > 0 (a Fermi momentum is needed), got {}", *c.mu_eV));

    need(c.n_p >= 3 && c.n_p % 2 == 1, fmt::format("grid.n_p must be odd and >= 3, got {}", c.n_p));
    need(c.n_x >= 3, fmt::format("grid.n_x must be >= 3, got {}", c.n_x));
    need(c.n_t >= 3, fmt::format("grid.n_t must be >= 3, got {}", c.n_t));
    need(c.p_max > 0.0, fmt::format("grid.p_max must be > 0, got {}", c.p_max));
    need(c.t_max_fs > 0.0, fmt::format("grid.t_max_fs must be > 0, got {}", c.t_max_fs));
    if (c.p_max > 0.0 && c.n_p >= 3)
        need(c.density_n0 < c.p_max / std::numbers::pi,
             fmt::format("band.density_n0 = {} exceeds what grid.p_max = {} can hold", c.density_n0, c.p_max));

    if (c.solver.lambda0)
        need(*c.solver.lambda0 >= 0.0, fmt::format("solver.lambda0 must be >= 0, got {}", *c.solver.lambda0));
    need(c.solver.tol > 0.0, fmt::format("solver.tol must be > 0, got {}", c.solver.tol));
    need(c.solver.max_iters >= 1, fmt::format("solver.max_iters must be >= 1, got {}", c.solver.max_iters));
    if (c.solver.p_ref)
        need(*c.solver.p_ref != 0.0 && std::abs(*c.solver.p_ref) <= c.p_max,
             fmt::format("solver.p_ref must be nonzero and within [-p_max, p_max], got {}", *c.solver.p_ref));
    if (c.solver.x_ref)
        need(*c.solver.x_ref >= 0.0 && *c.solver.x_ref <= c.length_nm,
             fmt::format("solver.x_ref must lie in [0, length_nm], got {}", *c.solver.x_ref));
    need(c.solver.denominator_cap > 0.0,
         fmt::format("solver.denominator_cap must be > 0, got {}", c.solver.denominator_cap));
    need(c.solver.log_cap > 0.0 && c.solver.log_cap <= 709.0,
         fmt::format("solver.log_cap must be in (0, 709], got {}", c.solver.log_cap));
    need(c.residual_threshold > 0.0,
         fmt::format("solver.residual_threshold must be > 0, got {}", c.residual_threshold));

    need(c.snapshot_t_index < c.n_t,
         fmt::format("output.snapshot_t_index must be < grid.n_t, got {}", c.snapshot_t_index));
    need(!c.output_dir.empty(), "output.dir must not be empty");
    need(c.checks.boundary_exception_fraction >= 0.0 && c.checks.boundary_exception_fraction < 0.5,
         fmt::format("checks.boundary_exception_fraction must be in [0, 0.5), got {}",
                     c.checks.boundary_exception_fraction));
    return bad;
}

std::vector<std::string> interpretation_flags(const RunConfig& c)
{
    std::vector<std::string> f{
        "on-shell: kernel frequency integral taken at omega = xi_p = p^2/2m - mu",
        "half-line q: 1D phonon integral over q in (0, q_D], prefactors 2*pi and 1/(2*pi) cancel",
        "kernels A, B evaluated at the local temperature T(x); E has no temperature dependence",
        fmt::format("reference points: p_ref = {}, x_ref = {}, t_ref = 0",
                    c.solver.p_ref ? fmt::format("{} hbar/nm", *c.solver.p_ref) : std::string("p_F (grid-snapped)"),
                    c.solver.x_ref ? fmt::format("{} nm", *c.solver.x_ref) : std::string("L/2 (grid-snapped)")),
        fmt::format("closure for the x-equation: {}", closure_name(c.solver.closure)),
        fmt::format("singular momentum denominator: {} (cap {})", policy_name(c.solver.denominator_policy),
                    c.solver.denominator_cap),
        "drift coefficient is the force on the electron, -e E",
        "normalization: n(x_ref, t = 0) = n0",
        "potentials at p_ref: phi from the equilibrium hole term 1 - f0, a_vec from f0 - f over (x, t)",
        "moments: 1/(2*pi) measure, heat current relative to mu",
    };
    if (c.corrections_enabled)
        f.push_back(fmt::format("quantum corrections on, prefactor {}, built from f0 and a Lorentzian Re G^r",
                                c.correction_prefactor));
    else
        f.push_back("quantum corrections off");
    return f;
}

std::string describe(const RunConfig& c)
{
    std::string out;
    auto line = [&](const std::string& s) {
        out += s;
        out += '\n';
    };
    std::vector<std::string> temps;
    for (double T : c.T0_kelvin)
        temps.push_back(fmt::format("{}", T));

    line("[bath]");
    line(fmt::format("sound_speed = {}", c.bath.sound_speed));
    line(fmt::format("debye_cutoff = {}", c.bath.debye_cutoff));
    line(fmt::format("coupling_g2 = {}", c.bath.coupling_g2));
    line(fmt::format("delta = {}", c.bath.delta));
    line("[quadrature]");
    line(fmt::format("intervals = {}", c.quadrature.intervals));
    line(fmt::format("rel_tol = {}", c.quadrature.rel_tol));
    line("[profile]");
    line(fmt::format("T0_kelvin = {}", fmt::join(temps, ", ")));
    line(fmt::format("gradient_k_per_nm = {}", c.gradient_k_per_nm));
    line(fmt::format("length_nm = {}", c.length_nm));
    line("[band]");
    line(fmt::format("density_n0 = {}", c.density_n0));
    line(fmt::format("mu_eV = {}", opt(c.mu_eV)));
    line(fmt::format("mass = {}", c.mass));
    line("[field]");
    line(fmt::format("field_V_per_m = {}", c.field_V_per_m));
    line("[grid]");
    line(fmt::format("n_p = {}", c.n_p));
    line(fmt::format("n_x = {}", c.n_x));
    line(fmt::format("n_t = {}", c.n_t));
    line(fmt::format("p_max = {}", c.p_max));
    line(fmt::format("t_max_fs = {}", c.t_max_fs));
    line("[solver]");
    line(fmt::format("lambda0 = {}", opt(c.solver.lambda0)));
    line(fmt::format("tol = {}", c.solver.tol));
    line(fmt::format("max_iters = {}", c.solver.max_iters));
    line(fmt::format("p_ref = {}", opt(c.solver.p_ref)));
    line(fmt::format("x_ref = {}", opt(c.solver.x_ref)));
    line(fmt::format("closure = {}", closure_name(c.solver.closure)));
    line(fmt::format("denominator_policy = {}", policy_name(c.solver.denominator_policy)));
    line(fmt::format("denominator_cap = {}", c.solver.denominator_cap));
    line(fmt::format("log_cap = {}", c.solver.log_cap));
    line(fmt::format("residual_threshold = {}", c.residual_threshold));
    line("[corrections]");
    line(fmt::format("enabled = {}", c.corrections_enabled));
    line(fmt::format("prefactor = {}", c.correction_prefactor));
    line("[output]");
    line(fmt::format("dir = {}", c.output_dir.string()));
    line(fmt::format("emit_p_resolved = {}", c.emit_p_resolved));
    line(fmt::format("snapshot_t_index = {}", c.snapshot_t_index));
    line("[checks]");
    line(fmt::format("damping_monotone_in_T0 = {}", c.checks.damping_monotone_in_T0));
    line(fmt::format("thermal_current_monotone_in_T0 = {}", c.checks.thermal_current_monotone_in_T0));
    line(fmt::format("current_increasing_in_x = {}", c.checks.current_increasing_in_x));
    line(fmt::format("density_increasing_in_x = {}", c.checks.density_increasing_in_x));
    line(fmt::format("boundary_exception_fraction = {}", c.checks.boundary_exception_fraction));
    line("; internal units: eV, nm, hbar/nm, hbar/eV");
    line(fmt::format("; sound speed {} m/s", units::sound_speed_from_internal(c.bath.sound_speed)));
    line(fmt::format("; drift force -e E = {} eV/nm", -units::field_to_internal(c.field_V_per_m)));
    line(fmt::format("; t_max = {} hbar/eV", units::fs_to_internal(c.t_max_fs)));
    return out;
}

} // namespace thermoqbe

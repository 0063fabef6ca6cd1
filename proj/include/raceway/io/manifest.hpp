#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "raceway/control/registry.hpp"
#include "raceway/io/keyvalue.hpp"
#include "raceway/model/carbonate.hpp"
#include "raceway/model/equilibria.hpp"
#include "raceway/sim/loop.hpp"

#ifndef RACEWAY_DEFAULT_ASSET_DIR
#define RACEWAY_DEFAULT_ASSET_DIR "assets"
#endif

namespace raceway::io {

/// Asset directory: $RACEWAY_ASSET_DIR, else the location baked in at build time.
inline std::string asset_dir()
{
    if (const char* env = std::getenv("RACEWAY_ASSET_DIR"); env && *env)
        return env;
    return RACEWAY_DEFAULT_ASSET_DIR;
}

inline std::string default_scenario_path() { return asset_dir() + "/scenarios/synthetic_6d.csv"; }
inline std::string default_params_path() { return asset_dir() + "/params/default.ini"; }

/// Starting point expressed in measurable quantities; the remaining states follow from equilibrium.
struct InitialConditions {
    double x_alg_gl = 0.5; ///< [g·L⁻¹]
    double depth = 0.15;   ///< [m]
    double temp = 20.0;    ///< [°C]
    double ph = 8.0;
    double dic = 5.0;      ///< [mol·m⁻³]
    double do_pct = 100.0; ///< [% saturation]

    StateVector to_state(const ReactorGeometry& g, const ModelParameters& p) const
    {
        if (!(x_alg_gl >= 0.0 && depth > 0.0 && dic >= 0.0 && do_pct >= 0.0 && std::isfinite(ph)))
            fail(ErrorKind::config, "initial conditions out of range");
        const auto eq = equilibria(temp, p);
        StateVector s;
        s.x_alg = 1000.0 * x_alg_gl;
        s.x_o2 = do_pct / 100.0 * eq.x_o2_eq;
        s.dic = dic;
        s.h = 1000.0 * std::pow(10.0, -ph);
        s.cat = balancing_cations(s.dic, s.h, eq.k1, eq.k2, eq.kw);
        s.temp = temp;
        s.vol = g.volume_at_depth(depth);
        return s;
    }
};

/// Everything needed to reproduce one run.
struct RunManifest {
    std::string name = "run";
    std::string scenario;  ///< empty → bundled synthetic scenario
    std::string params;    ///< empty → bundled default parameters
    std::string out;       ///< empty → out/<name>
    double days = 6.0;
    std::uint64_t seed = 0; ///< reserved; every built-in component is deterministic
    ControllerSelection controllers;
    ActuatorLimits limits;
    SimulationConfig sim;
    InitialConditions initial;

    std::string scenario_path() const { return scenario.empty() ? default_scenario_path() : scenario; }
    std::string params_path() const { return params.empty() ? default_params_path() : params; }
    std::string out_dir() const { return out.empty() ? "out/" + name : out; }
};

namespace detail {

inline std::string resolve_relative(const std::string& path, const std::filesystem::path& base)
{
    if (path.empty() || std::filesystem::path(path).is_absolute())
        return path;
    return (base / path).lexically_normal().string();
}

/// Numeric manifest keys in canonical order.
inline std::vector<std::pair<std::string, double*>> manifest_numbers(RunManifest& m)
{
    std::vector<std::pair<std::string, double*>> v{
        {"run.days", &m.days},
        {"run.t_m", &m.sim.t_m},
        {"run.gas_delay", &m.sim.gas_delay},
        {"references.ph", &m.sim.refs.ph_ref},
        {"references.do", &m.sim.refs.do_ref},
        {"references.temp", &m.sim.refs.temp_ref},
        {"limits.q_co2_max", &m.limits.q_co2_max},
        {"limits.q_air_max", &m.limits.q_air_max},
        {"limits.q_w_max", &m.limits.q_w_max},
        {"limits.t_in_min", &m.limits.t_in_min},
        {"limits.t_in_max", &m.limits.t_in_max},
        {"limits.pump_rate", &m.limits.pump_rate},
        {"integrator.rel_tol", &m.sim.integrator.rel_tol},
        {"integrator.min_substep", &m.sim.integrator.min_substep},
        {"integrator.max_substep", &m.sim.integrator.max_substep},
    };
    for (std::size_t i = 0; i < kStateSize; ++i)
        v.emplace_back(std::string("integrator.abs_tol_") + kStateNames[i], &m.sim.integrator.abs_tol[i]);
    const std::pair<const char*, double*> initial[] = {
        {"initial_state.x_alg_gl", &m.initial.x_alg_gl}, {"initial_state.depth", &m.initial.depth},
        {"initial_state.temp", &m.initial.temp},         {"initial_state.ph", &m.initial.ph},
        {"initial_state.dic", &m.initial.dic},           {"initial_state.do_pct", &m.initial.do_pct},
    };
    for (const auto& [k, p] : initial)
        v.emplace_back(k, p);
    return v;
}

inline std::vector<std::pair<std::string, std::string*>> manifest_strings(RunManifest& m)
{
    return {
        {"run.name", &m.name},
        {"run.scenario", &m.scenario},
        {"run.params", &m.params},
        {"run.out", &m.out},
        {"controllers.ph", &m.controllers.ph},
        {"controllers.do", &m.controllers.dissolved_oxygen},
        {"controllers.hd", &m.controllers.harvest},
        {"controllers.temp", &m.controllers.temperature},
    };
}

} // namespace detail

/// Parses a manifest. Relative scenario/params paths are taken relative to `base_dir`.
/// Sections: [run] [controllers] [references] [limits] [integrator] [initial_state]; all optional.
inline RunManifest parse_manifest(std::string_view text, std::string_view origin = "<manifest>",
                                  const std::filesystem::path& base_dir = {})
{
    RunManifest m;
    std::map<std::string, double*> numbers;
    for (const auto& [k, p] : detail::manifest_numbers(m))
        numbers[k] = p;
    std::map<std::string, std::string*> strings;
    for (const auto& [k, p] : detail::manifest_strings(m))
        strings[k] = p;

    const std::string where(origin);
    std::set<std::string> seen;
    double max_substeps = static_cast<double>(m.sim.integrator.max_substeps);
    double seed = 0.0;
    numbers["integrator.max_substeps"] = &max_substeps;
    numbers["run.seed"] = &seed;
    for (const auto& kv : parse_key_values(text, origin)) {
        const auto name = kv.section + "." + kv.key;
        const auto at = where + ":" + std::to_string(kv.line);
        if (!seen.insert(name).second)
            fail(ErrorKind::config, at + ": duplicate key '" + name + "'");
        if (const auto it = numbers.find(name); it != numbers.end())
            *it->second = parse_double(kv.value, name);
        else if (const auto is = strings.find(name); is != strings.end())
            *is->second = kv.value;
        else
            fail(ErrorKind::config, at + ": unknown manifest key '" + name + "'");
    }
    if (!(max_substeps >= 1.0) || !(seed >= 0.0))
        fail(ErrorKind::config, where + ": max_substeps and seed must be non-negative integers");
    m.sim.integrator.max_substeps = static_cast<std::size_t>(max_substeps);
    m.seed = static_cast<std::uint64_t>(seed);
    if (!(m.days > 0.0))
        fail(ErrorKind::config, where + ": days must be positive");
    m.sim.horizon = m.days * 86400.0;
    m.scenario = detail::resolve_relative(m.scenario, base_dir);
    m.params = detail::resolve_relative(m.params, base_dir);

    const auto& reg = ControllerRegistry::instance();
    using Slot = ControllerRegistry::Slot;
    const std::pair<Slot, const std::string*> picks[] = {
        {Slot::ph, &m.controllers.ph},
        {Slot::dissolved_oxygen, &m.controllers.dissolved_oxygen},
        {Slot::harvest, &m.controllers.harvest},
        {Slot::temperature, &m.controllers.temperature},
    };
    for (const auto& [slot, n] : picks)
        if (!reg.has(slot, *n))
            fail(ErrorKind::config, where + ": unknown " + ControllerRegistry::slot_name(slot) + " controller '" +
                                        *n + "'");
    m.limits.validate();
    m.sim.validate();
    return m;
}

/// Canonical text form; parse_manifest(emit_manifest(m)) reproduces m.
inline std::string emit_manifest(const RunManifest& manifest)
{
    RunManifest m = manifest;
    std::map<std::string, std::vector<std::string>> lines;
    for (const auto& [k, p] : detail::manifest_strings(m))
        lines[k.substr(0, k.find('.'))].push_back(k.substr(k.find('.') + 1) + " = " + *p);
    for (const auto& [k, p] : detail::manifest_numbers(m))
        lines[k.substr(0, k.find('.'))].push_back(k.substr(k.find('.') + 1) + " = " + format_shortest(*p));
    lines["run"].push_back("seed = " + std::to_string(m.seed));
    lines["integrator"].push_back("max_substeps = " + std::to_string(m.sim.integrator.max_substeps));
    std::string out;
    for (const char* section : {"run", "controllers", "references", "limits", "integrator", "initial_state"}) {
        out += std::string(out.empty() ? "" : "\n") + "[" + section + "]\n";
        for (const auto& l : lines[section])
            out += l + "\n";
    }
    return out;
}

inline RunManifest load_manifest(const std::string& path)
{
    const auto base = std::filesystem::path(path).parent_path();
    auto m = parse_manifest(read_text_file(path), path, base);
    if (m.name == "run")
        m.name = std::filesystem::path(path).stem().string();
    return m;
}

} // namespace raceway::io

#pragma once

#include <cstdio>
#include <future>
#include <string>
#include <vector>

#include "raceway/control/registry.hpp"
#include "raceway/evaluation.hpp"
#include "raceway/io/manifest.hpp"
#include "raceway/io/param_file.hpp"
#include "raceway/io/results_io.hpp"
#include "raceway/io/scenario_io.hpp"
#include "raceway/sim/loop.hpp"

namespace raceway {

/// Loads the scenario and parameters a manifest points at and runs it.
inline ResultsLog run_manifest(const io::RunManifest& m)
{
    auto plant = io::load_parameter_file(m.params_path());
    auto sc = io::load_scenario_csv(m.scenario_path());
    sc.initial = m.initial.to_state(plant.geometry, plant.params);
    ControllerDeps deps{m.limits, plant.params, plant.geometry, m.sim.refs, {}};
    auto set = ControllerRegistry::instance().make_set(m.controllers, deps);
    return run_simulation(sc, set, m.limits, m.sim, plant.params, plant.geometry);
}

/// Runs several manifests concurrently; results keep the input order.
inline std::vector<ResultsLog> run_manifests(const std::vector<io::RunManifest>& ms, bool parallel = true)
{
    std::vector<ResultsLog> logs;
    if (!parallel) {
        for (const auto& m : ms)
            logs.push_back(run_manifest(m));
        return logs;
    }
    std::vector<std::future<ResultsLog>> jobs;
    for (const auto& m : ms)
        jobs.push_back(std::async(std::launch::async, [&m] { return run_manifest(m); }));
    for (auto& j : jobs)
        logs.push_back(j.get());
    return logs;
}

struct ComparisonColumn {
    std::string name;
    LoopCostReport costs; ///< normalized by the first column
    KpiReport kpi;
    std::array<std::string, 4> controllers;
};

inline std::vector<ComparisonColumn> compare_runs(const std::vector<std::string>& names,
                                                  const std::vector<ResultsLog>& logs)
{
    if (logs.empty() || names.size() != logs.size())
        fail(ErrorKind::evaluation, "comparison needs one name per run and at least one run");
    const auto base = loop_costs(logs.front());
    std::vector<ComparisonColumn> cols;
    for (std::size_t i = 0; i < logs.size(); ++i)
        cols.push_back({names[i], normalize(loop_costs(logs[i]), base), compute_kpis(logs[i]), logs[i].controllers});
    return cols;
}

/// Plain-text table: controller modes, normalized indices, KPIs.
inline std::string format_comparison(const std::vector<ComparisonColumn>& cols)
{
    char buf[128];
    std::string out;
    auto row = [&](const char* label, auto cell) {
        std::snprintf(buf, sizeof buf, "%-34s", label);
        out += buf;
        for (const auto& c : cols)
            out += cell(c);
        out += "\n";
    };
    auto text = [&](const std::string& s) {
        std::snprintf(buf, sizeof buf, "%16s", s.c_str());
        return std::string(buf);
    };
    auto num = [&](double v, const char* fmt) {
        std::snprintf(buf, sizeof buf, fmt, v);
        return text(buf);
    };
    const std::string rule(34 + 16 * cols.size(), '-');

    row("", [&](const ComparisonColumn& c) { return text(c.name); });
    out += rule + "\n";
    row("pH control", [&](const ComparisonColumn& c) { return text(c.controllers[0]); });
    row("DO control", [&](const ComparisonColumn& c) { return text(c.controllers[1]); });
    row("Harvest/dilution", [&](const ComparisonColumn& c) { return text(c.controllers[2]); });
    row("Temperature control", [&](const ComparisonColumn& c) { return text(c.controllers[3]); });
    out += rule + "\n";
    row("J_pH", [&](const ComparisonColumn& c) { return num(c.costs.j_ph, "%.4f"); });
    row("J_DO", [&](const ComparisonColumn& c) { return num(c.costs.j_do, "%.4f"); });
    row("J_Temp", [&](const ComparisonColumn& c) { return num(c.costs.j_temp, "%.4f"); });
    row("J_avg", [&](const ComparisonColumn& c) { return num(c.costs.j_avg, "%.4f"); });
    out += rule + "\n";
    row("Total air injected [L]", [&](const ComparisonColumn& c) { return num(c.kpi.total_air_l, "%.2f"); });
    row("Total CO2 injected [L]", [&](const ComparisonColumn& c) { return num(c.kpi.total_co2_l, "%.2f"); });
    row("Biomass produced [g]", [&](const ComparisonColumn& c) { return num(c.kpi.biomass_produced_g, "%.2f"); });
    row("Productivity [g m-2 day-1]", [&](const ComparisonColumn& c) { return num(c.kpi.prod_areal, "%.2f"); });
    row("Harvested [g]", [&](const ComparisonColumn& c) { return num(c.kpi.harvested_g, "%.2f"); });
    row("Harvested [g m-2 day-1]", [&](const ComparisonColumn& c) { return num(c.kpi.harv_areal, "%.2f"); });
    row("Production yield [%]", [&](const ComparisonColumn& c) { return num(c.kpi.yield_pct, "%.2f"); });
    row("Biomass accumulation [%]", [&](const ComparisonColumn& c) { return num(c.kpi.accum_rel_pct, "%.2f"); });
    return out;
}

} // namespace raceway

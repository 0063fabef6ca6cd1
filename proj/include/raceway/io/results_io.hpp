#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raceway/evaluation.hpp"
#include "raceway/io/keyvalue.hpp"
#include "raceway/sim/loop.hpp"

namespace raceway::io {

inline constexpr const char* kTimeseriesFile = "timeseries.csv";
inline constexpr const char* kSummaryFile = "summary.txt";
inline constexpr const char* kMetaFile = "run_meta.txt";

namespace detail {

inline std::vector<std::pair<std::string, double*>> state_slots(const std::string& prefix, StateVector& s)
{
    return {{prefix + "x_alg", &s.x_alg}, {prefix + "x_o2", &s.x_o2}, {prefix + "dic", &s.dic},
            {prefix + "cat", &s.cat},     {prefix + "h", &s.h},       {prefix + "temp", &s.temp},
            {prefix + "vol", &s.vol}};
}

/// Numeric metadata fields, as (section.key, pointer) pairs.
inline std::vector<std::pair<std::string, double*>> meta_slots(ResultsLog& log)
{
    std::vector<std::pair<std::string, double*>> v{
        {"run.t_m", &log.t_m},
        {"run.area", &log.area},
        {"limits.q_co2_max", &log.limits.q_co2_max},
        {"limits.q_air_max", &log.limits.q_air_max},
        {"limits.q_w_max", &log.limits.q_w_max},
        {"limits.t_in_min", &log.limits.t_in_min},
        {"limits.t_in_max", &log.limits.t_in_max},
        {"limits.pump_rate", &log.limits.pump_rate},
        {"references.ph", &log.refs.ph_ref},
        {"references.do", &log.refs.do_ref},
        {"references.temp", &log.refs.temp_ref},
    };
    for (auto& e : state_slots("initial_state.", log.initial_state))
        v.push_back(e);
    for (auto& e : state_slots("final_state.", log.final_state))
        v.push_back(e);
    return v;
}

inline constexpr std::array<const char*, 4> kSlotKeys{"ph", "do", "hd", "temp"};

inline std::string section_of(const std::string& qualified) { return qualified.substr(0, qualified.find('.')); }
inline std::string key_of(const std::string& qualified) { return qualified.substr(qualified.find('.') + 1); }

inline void ensure_dir(const std::string& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        fail(ErrorKind::io, "cannot create output directory '" + dir + "'");
}

inline std::string join(const std::string& dir, const char* file)
{
    return (std::filesystem::path(dir) / file).string();
}

} // namespace detail

/// One row per loop step, one column per logged series, 17 significant digits.
inline std::string emit_timeseries(const ResultsLog& log)
{
    const auto& cols = ResultsLog::columns();
    std::string out;
    for (std::size_t c = 0; c < cols.size(); ++c)
        out += (c ? "," : "") + std::string(cols[c].name);
    out += "\n";
    for (std::size_t k = 0; k < log.size(); ++k) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c)
                out += ',';
            out += format_17g((log.*cols[c].column)[k]);
        }
        out += '\n';
    }
    return out;
}

/// Fills the per-step series of `log` from a time-series table. Every column must be present.
inline void parse_timeseries(std::string_view text, ResultsLog& log, std::string_view origin = "<timeseries>")
{
    const auto& cols = ResultsLog::columns();
    for (const auto& c : cols)
        (log.*c.column).clear();
    const std::string where(origin);
    std::vector<ResultsLog::Column> order;
    bool have_header = false;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = trim(text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos));
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string_view> cells;
        std::size_t p = 0;
        while (true) {
            const auto c = line.find(',', p);
            cells.push_back(trim(line.substr(p, c == std::string_view::npos ? std::string_view::npos : c - p)));
            if (c == std::string_view::npos)
                break;
            p = c + 1;
        }
        if (!have_header) {
            std::map<std::string_view, ResultsLog::Column> by_name;
            for (const auto& c : cols)
                by_name[c.name] = c.column;
            for (auto name : cells) {
                const auto it = by_name.find(name);
                if (it == by_name.end())
                    fail(ErrorKind::config, where + ": unknown column '" + std::string(name) + "'");
                order.push_back(it->second);
                by_name.erase(it);
            }
            if (!by_name.empty())
                fail(ErrorKind::config, where + ": missing column '" + std::string(by_name.begin()->first) + "'");
            have_header = true;
            continue;
        }
        if (cells.size() != order.size())
            fail(ErrorKind::config, where + ":" + std::to_string(lineno) + ": wrong number of cells");
        for (std::size_t c = 0; c < cells.size(); ++c)
            (log.*order[c]).push_back(parse_double(cells[c], "time-series cell"));
    }
    if (!have_header)
        fail(ErrorKind::config, where + ": empty time-series file");
}

/// Run description needed to re-evaluate an exported log.
inline std::string emit_run_meta(const ResultsLog& log)
{
    ResultsLog& m = const_cast<ResultsLog&>(log); // slots are only read here
    std::string out;
    std::string section;
    auto open = [&](const std::string& s) {
        if (s != section) {
            out += (section.empty() ? "[" : "\n[") + s + "]\n";
            section = s;
        }
    };
    open("run");
    out += "delay_steps = " + std::to_string(log.delay_steps) + "\n";
    for (const auto& [name, ptr] : detail::meta_slots(m)) {
        open(detail::section_of(name));
        out += detail::key_of(name) + " = " + format_17g(*ptr) + "\n";
    }
    open("controllers");
    for (std::size_t i = 0; i < detail::kSlotKeys.size(); ++i)
        out += std::string(detail::kSlotKeys[i]) + " = " + log.controllers[i] + "\n";
    return out;
}

inline void parse_run_meta(std::string_view text, ResultsLog& log, std::string_view origin = "<meta>")
{
    std::map<std::string, double*> slots;
    for (const auto& [name, ptr] : detail::meta_slots(log))
        slots[name] = ptr;
    const std::string where(origin);
    for (const auto& kv : parse_key_values(text, origin)) {
        const auto name = kv.section + "." + kv.key;
        if (name == "run.delay_steps") {
            log.delay_steps = static_cast<std::size_t>(parse_double(kv.value, name));
            continue;
        }
        if (kv.section == "controllers") {
            bool found = false;
            for (std::size_t i = 0; i < detail::kSlotKeys.size(); ++i)
                if (kv.key == detail::kSlotKeys[i]) {
                    log.controllers[i] = kv.value;
                    found = true;
                }
            if (!found)
                fail(ErrorKind::config, where + ": unknown controller slot '" + kv.key + "'");
            continue;
        }
        const auto it = slots.find(name);
        if (it == slots.end())
            fail(ErrorKind::config, where + ":" + std::to_string(kv.line) + ": unknown key '" + name + "'");
        *it->second = parse_double(kv.value, name);
        slots.erase(it);
    }
    if (!slots.empty())
        fail(ErrorKind::config, where + ": missing key '" + slots.begin()->first + "'");
}

/// Raw loop costs and KPIs of one run. Deterministic text, so `evaluate` can reproduce it byte for byte.
inline std::string emit_summary(const ResultsLog& log)
{
    const auto c = loop_costs(log);
    const auto k = compute_kpis(log);
    auto line = [](const char* key, double v) { return std::string(key) + " = " + format_17g(v) + "\n"; };
    std::string out = "[controllers]\n";
    for (std::size_t i = 0; i < detail::kSlotKeys.size(); ++i)
        out += std::string(detail::kSlotKeys[i]) + " = " + log.controllers[i] + "\n";
    out += "\n[costs]\n";
    out += line("ph_tracking", c.ph.j_sp) + line("ph_smoothness", c.ph.j_s) + line("ph_consumption", c.ph.j_c);
    out += line("do_tracking", c.dissolved_oxygen.j_sp) + line("do_smoothness", c.dissolved_oxygen.j_s) +
           line("do_consumption", c.dissolved_oxygen.j_c);
    out += line("temp_tracking", c.temperature.j_sp) + line("temp_smoothness_qw", c.temperature.j_s) +
           line("temp_smoothness_tin", c.temperature.j_s2) + line("temp_consumption", c.temperature.j_c);
    out += line("j_ph", c.j_ph) + line("j_do", c.j_do) + line("j_temp", c.j_temp) + line("j_avg", c.j_avg);
    out += "\n[kpi]\n";
    out += line("total_air_l", k.total_air_l) + line("total_co2_l", k.total_co2_l);
    out += line("initial_biomass_g", k.initial_biomass_g) + line("final_biomass_g", k.final_biomass_g);
    out += line("biomass_produced_g", k.biomass_produced_g) + line("productivity_g_m2_day", k.prod_areal);
    out += line("harvested_g", k.harvested_g) + line("harvested_g_m2_day", k.harv_areal);
    out += line("yield_pct", k.yield_pct) + line("accumulation_pct", k.accum_rel_pct);
    out += line("days", k.days);
    return out;
}

/// Per-panel plot tables: time in hours, measured variable, reference where one exists.
inline std::vector<std::pair<std::string, std::string>> emit_plot_tables(const ResultsLog& log)
{
    struct Panel {
        const char* file;
        std::vector<std::pair<const char*, const std::vector<double>*>> series;
    };
    const std::vector<Panel> panels{
        {"plot_ph.csv", {{"ph", &log.ph}, {"ph_ref", &log.ph_ref}}},
        {"plot_do.csv", {{"do_pct", &log.do_pct}, {"do_ref_pct", &log.do_ref}}},
        {"plot_biomass.csv", {{"x_alg_gl", &log.x_alg_gl}}},
        {"plot_depth.csv", {{"depth_m", &log.depth}}},
        {"plot_temp.csv", {{"temp_c", &log.temp}, {"temp_ref_c", &log.temp_ref}, {"temp_ext_c", &log.temp_ext}}},
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : panels) {
        std::string text = "time_h";
        for (const auto& [name, v] : p.series)
            text += std::string(",") + name;
        text += "\n";
        for (std::size_t k = 0; k < log.size(); ++k) {
            text += format_17g(log.time[k] / 3600.0);
            for (const auto& [name, v] : p.series)
                text += "," + format_17g((*v)[k]);
            text += "\n";
        }
        out.emplace_back(p.file, std::move(text));
    }
    return out;
}

/// Writes the time series, run metadata, summary and plot tables into `dir` (created if needed).
inline void export_results(const ResultsLog& log, const std::string& dir)
{
    detail::ensure_dir(dir);
    write_text_file(detail::join(dir, kTimeseriesFile), emit_timeseries(log));
    write_text_file(detail::join(dir, kMetaFile), emit_run_meta(log));
    write_text_file(detail::join(dir, kSummaryFile), emit_summary(log));
    for (const auto& [file, text] : emit_plot_tables(log))
        write_text_file(detail::join(dir, file.c_str()), text);
}

/// Rebuilds a log from an exported run directory.
inline ResultsLog read_results(const std::string& dir)
{
    ResultsLog log;
    const auto meta = detail::join(dir, kMetaFile);
    const auto series = detail::join(dir, kTimeseriesFile);
    parse_run_meta(read_text_file(meta), log, meta);
    parse_timeseries(read_text_file(series), log, series);
    return log;
}

} // namespace raceway::io

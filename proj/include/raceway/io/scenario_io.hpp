#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "raceway/io/keyvalue.hpp"
#include "raceway/sim/scenario.hpp"

namespace raceway::io {

inline constexpr std::array<const char*, 5> kScenarioColumns{"time_s", "rad_global_wm2", "temp_ext_c", "rh_pct",
                                                            "wind_ms"};
inline constexpr const char* kScenarioParColumn = "rad_par";

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto c = line.find(',', pos);
        out.push_back(trim(line.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos)));
        if (c == std::string_view::npos)
            break;
        pos = c + 1;
    }
    return out;
}

} // namespace detail

/// Parses a scenario table. Leading `# key = value` lines may set `start_offset_s`.
/// Header problems are configuration errors; bad data rows are scenario errors.
/// The initial state is not part of the file and stays default-initialized.
inline Scenario parse_scenario_csv(std::string_view text, std::string_view origin = "<scenario>")
{
    Scenario sc;
    std::vector<std::string_view> header;
    std::array<int, 5> idx{-1, -1, -1, -1, -1};
    int par_idx = -1;
    int lineno = 0;
    std::size_t pos = 0;
    const std::string where(origin);

    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = trim(text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos));
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++lineno;
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string_view::npos && trim(body.substr(0, eq)) == "start_offset_s")
                sc.start_offset = parse_double(body.substr(eq + 1), "start_offset_s");
            continue;
        }
        if (header.empty()) {
            header = detail::split_commas(line);
            for (std::size_t i = 0; i < header.size(); ++i) {
                for (std::size_t c = 0; c < kScenarioColumns.size(); ++c)
                    if (header[i] == kScenarioColumns[c])
                        idx[c] = static_cast<int>(i);
                if (header[i] == kScenarioParColumn)
                    par_idx = static_cast<int>(i);
            }
            for (std::size_t c = 0; c < kScenarioColumns.size(); ++c)
                if (idx[c] < 0)
                    fail(ErrorKind::config, where + ": missing scenario column '" + kScenarioColumns[c] + "'");
            continue;
        }
        const auto cells = detail::split_commas(line);
        if (cells.size() != header.size())
            fail(ErrorKind::scenario, where + ":" + std::to_string(lineno) + ": expected " +
                                          std::to_string(header.size()) + " cells, found " +
                                          std::to_string(cells.size()));
        auto cell = [&](int i) {
            try {
                return parse_double(cells[static_cast<std::size_t>(i)], std::string(header[static_cast<std::size_t>(i)]));
            } catch (const Error& e) {
                fail(ErrorKind::scenario, where + ":" + std::to_string(lineno) + ": " + e.detail());
            }
        };
        sc.time_s.push_back(cell(idx[0]));
        sc.rad_global.push_back(cell(idx[1]));
        sc.temp_ext.push_back(cell(idx[2]));
        sc.rh.push_back(cell(idx[3]));
        sc.wind.push_back(cell(idx[4]));
        if (par_idx >= 0)
            sc.rad_par.push_back(cell(par_idx));
    }
    if (header.empty())
        fail(ErrorKind::config, where + ": scenario file has no header row");
    if (sc.time_s.empty())
        fail(ErrorKind::scenario, where + ": scenario has no data rows");
    for (std::size_t i = 1; i < sc.time_s.size(); ++i)
        if (!(sc.time_s[i] > sc.time_s[i - 1]))
            fail(ErrorKind::scenario, where + ": time_s must be strictly increasing (row " + std::to_string(i) + ")");
    sc.period = sc.time_s.size() > 1 ? sc.time_s[1] - sc.time_s[0] : 0.0;
    if (par_idx < 0)
        sc.derive_par();
    return sc;
}

inline Scenario load_scenario_csv(const std::string& path)
{
    return parse_scenario_csv(read_text_file(path), path);
}

/// Canonical text form; the rad_par column is written only when asked for.
inline std::string emit_scenario_csv(const Scenario& sc, bool with_par = false)
{
    std::string out;
    if (sc.start_offset != 0.0)
        out += "# start_offset_s = " + format_shortest(sc.start_offset) + "\n";
    out += "time_s,rad_global_wm2,temp_ext_c,rh_pct,wind_ms";
    out += with_par ? ",rad_par\n" : "\n";
    for (std::size_t i = 0; i < sc.size(); ++i) {
        out += format_shortest(sc.time_s[i]) + "," + format_shortest(sc.rad_global[i]) + "," +
               format_shortest(sc.temp_ext[i]) + "," + format_shortest(sc.rh[i]) + "," + format_shortest(sc.wind[i]);
        if (with_par)
            out += "," + format_shortest(sc.rad_par[i]);
        out += "\n";
    }
    return out;
}

/// Clear-sky multi-day weather.
struct SyntheticWeather {
    int days = 6;
    double period = 300.0;       ///< [s]
    double rad_peak = 950.0;     ///< [W·m⁻²] at solar noon
    double day_length = 13.0;    ///< [h], centred on noon
    double temp_mean = 20.0;     ///< [°C]
    double temp_swing = 6.0;     ///< amplitude [°C]
    double temp_lag = 2.0;       ///< hours after noon of the temperature maximum
    double rh_mean = 60.0;       ///< [%]
    double rh_swing = 10.0;      ///< amplitude, lowest when warmest [%]
    double wind_mean = 2.0;      ///< [m·s⁻¹]
    double wind_swing = 0.5;     ///< amplitude, strongest in the afternoon [m·s⁻¹]

    void validate() const
    {
        if (days < 1)
            fail(ErrorKind::config, "synthetic scenario needs at least one day");
        if (!(period > 0.0) || std::fmod(86400.0, period) != 0.0)
            fail(ErrorKind::config, "synthetic period must divide one day");
        if (!(rad_peak >= 0.0) || !(day_length > 0.0 && day_length < 24.0))
            fail(ErrorKind::config, "synthetic irradiance settings out of range");
        if (!(wind_mean >= 0.0) || !(rh_mean >= 0.0 && rh_mean <= 100.0))
            fail(ErrorKind::config, "synthetic humidity or wind settings out of range");
    }
};

inline Scenario generate_synthetic_scenario(const SyntheticWeather& w)
{
    w.validate();
    Scenario sc;
    sc.period = w.period;
    const auto n = static_cast<std::size_t>(std::llround(w.days * 86400.0 / w.period));
    const double sunrise = 12.0 - 0.5 * w.day_length;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * w.period;
        const double hour = std::fmod(t, 86400.0) / 3600.0;
        double rad = 0.0;
        if (hour > sunrise && hour < sunrise + w.day_length)
            rad = w.rad_peak * std::sin(std::numbers::pi * (hour - sunrise) / w.day_length);
        const double phase = std::cos(2.0 * std::numbers::pi * (hour - 12.0 - w.temp_lag) / 24.0);
        sc.time_s.push_back(t);
        sc.rad_global.push_back(std::max(rad, 0.0));
        sc.temp_ext.push_back(w.temp_mean + w.temp_swing * phase);
        sc.rh.push_back(std::clamp(w.rh_mean - w.rh_swing * phase, 0.0, 100.0));
        sc.wind.push_back(std::max(w.wind_mean + w.wind_swing * phase, 0.0));
    }
    sc.derive_par();
    return sc;
}

} // namespace raceway::io

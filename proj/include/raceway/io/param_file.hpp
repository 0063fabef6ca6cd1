#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "raceway/io/keyvalue.hpp"
#include "raceway/model/parameters.hpp"
#include "raceway/model/types.hpp"

namespace raceway::io {

/// Everything a parameter file carries: the reactor layout and the model constants.
struct PlantConfig {
    ReactorGeometry geometry;
    ModelParameters params;
};

namespace detail {

#define RACEWAY_GEOM_FIELD(key, unit, member)                                              \
    ParameterField<ReactorGeometry>                                                        \
    {                                                                                      \
        "geometry", key, unit, [](ReactorGeometry& g) -> double& { return g.member; }      \
    }

inline const auto& geometry_fields()
{
    static const std::array fields{
        RACEWAY_GEOM_FIELD("channel_length", "m", channel_length),
        RACEWAY_GEOM_FIELD("channel_count", "-", channel_count),
        RACEWAY_GEOM_FIELD("width", "m", width),
        RACEWAY_GEOM_FIELD("sump_radius", "m", sump_radius),
        RACEWAY_GEOM_FIELD("sump_height", "m", sump_height),
        RACEWAY_GEOM_FIELD("paddlewheel_length", "m", paddlewheel_length),
    };
    return fields;
}

#undef RACEWAY_GEOM_FIELD

inline std::string qualified(std::string_view section, std::string_view key)
{
    return std::string(section) + "." + std::string(key);
}

} // namespace detail

/// Parses a complete parameter file. Unknown, duplicate and missing keys are config errors.
inline PlantConfig parse_parameter_file(std::string_view text, std::string_view origin = "<params>")
{
    PlantConfig cfg;
    std::map<std::string, double*> slots;
    for (const auto& f : detail::geometry_fields())
        slots[detail::qualified(f.section, f.key)] = &f.ref(cfg.geometry);
    for (const auto& f : model_parameter_fields())
        slots[detail::qualified(f.section, f.key)] = &f.ref(cfg.params);

    std::set<std::string> seen;
    for (const auto& kv : parse_key_values(text, origin)) {
        const auto name = detail::qualified(kv.section, kv.key);
        const auto it = slots.find(name);
        if (it == slots.end())
            fail(ErrorKind::config, std::string(origin) + ":" + std::to_string(kv.line) +
                                        ": unknown parameter '" + name + "'");
        if (!seen.insert(name).second)
            fail(ErrorKind::config, std::string(origin) + ":" + std::to_string(kv.line) +
                                        ": duplicate parameter '" + name + "'");
        *it->second = parse_double(kv.value, name);
    }
    std::string missing;
    for (const auto& [name, ptr] : slots)
        if (!seen.count(name))
            missing += (missing.empty() ? "" : ", ") + name;
    if (!missing.empty())
        fail(ErrorKind::config, std::string(origin) + ": missing parameters: " + missing);

    cfg.geometry.validate();
    cfg.params.validate();
    return cfg;
}

inline PlantConfig load_parameter_file(const std::string& path)
{
    return parse_parameter_file(read_text_file(path), path);
}

/// Canonical text form: one section per submodel, unit comment on every line.
inline std::string emit_parameter_file(const PlantConfig& cfg)
{
    PlantConfig copy = cfg;
    std::string out;
    std::string_view current;
    auto emit = [&](const auto& field, double value) {
        if (field.section != current) {
            out += (current.empty() ? "[" : "\n[") + std::string(field.section) + "]\n";
            current = field.section;
        }
        out += std::string(field.key) + " = " + format_shortest(value) + "  # " + std::string(field.unit) +
               "\n";
    };
    for (const auto& f : detail::geometry_fields())
        emit(f, f.ref(copy.geometry));
    for (const auto& f : model_parameter_fields())
        emit(f, f.ref(copy.params));
    return out;
}

} // namespace raceway::io

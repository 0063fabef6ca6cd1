#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "raceway/errors.hpp"

namespace raceway::io {

/// One `key = value` line of a sectioned text file.
struct KeyValue {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

/// Parses `[section]` headers and `key = value` lines; `#` and `;` start comments.
inline std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view origin = "<text>")
{
    std::vector<KeyValue> out;
    std::string section;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++lineno;
        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
            line = line.substr(0, c);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorKind::config, std::string(origin) + ":" + std::to_string(lineno) +
                                            ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::config, std::string(origin) + ":" + std::to_string(lineno) + ": expected key = value");
        out.push_back({section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                       lineno});
    }
    return out;
}

inline double parse_double(std::string_view text, std::string_view what)
{
    text = trim(text);
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        fail(ErrorKind::config, "cannot parse number '" + std::string(text) + "' for " + std::string(what));
    return v;
}

/// Shortest decimal representation that parses back to the same double.
inline std::string format_shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Fixed 17-significant-digit representation (lossless for finite doubles).
inline std::string format_17g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::io, "cannot write '" + path + "'");
    out << content;
    if (!out)
        fail(ErrorKind::io, "write failed for '" + path + "'");
}

} // namespace raceway::io

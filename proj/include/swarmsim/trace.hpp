#pragma once

// Run recording. The trace is one row per tick plus an ordered event log
// (plans, election, load, warnings, errors). Serialization is plain
// delimited text with a fixed %.17g number format, so identical runs
// produce byte-identical files and parsed values round-trip exactly.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

struct TickRecord {
    long tick = 0;
    double time = 0.0;
    int phase = 1;
    std::vector<Vec2> positions;
    std::vector<Vec2> goals;
    std::optional<Vec2> circle_center;
    double formation_error = 0.0;
    std::vector<double> distance_traveled;
    bool support_coverage = false;
};

/// Event kinds and payload layouts (space-separated fields):
///   meta      "n_agents=<N> r_c=<r> dt=<dt>"
///   target    "<x> <y>"
///   obstacle  "<x1> <y1> <x2> <y2> ..."
///   plan      "<epoch> <cx> <cy>"
///   load      ""
///   election  "<master index>"
///   warning   free text (no commas)
///   error     "<code> <message>"
///   done      ""
struct Event {
    long tick = 0;
    std::string kind;
    std::string payload;
};

struct SimTrace {
    int n_agents = 0;
    double dt = 0.0;
    std::vector<TickRecord> rows;
    std::vector<Event> events;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string trace_header(int n_agents) {
    std::string h = "tick,time,phase";
    for (int i = 1; i <= n_agents; ++i)
        h += ",a" + std::to_string(i) + "_x,a" + std::to_string(i) + "_y";
    for (int i = 1; i <= n_agents; ++i)
        h += ",g" + std::to_string(i) + "_x,g" + std::to_string(i) + "_y";
    h += ",circle_x,circle_y,formation_error";
    for (int i = 1; i <= n_agents; ++i) h += ",d" + std::to_string(i);
    h += ",support_coverage";
    return h;
}

inline void write_trace_csv(const SimTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SimError(Err::InvalidArgument, "cannot open " + path + " for writing");
    out << trace_header(trace.n_agents) << '\n';
    for (const TickRecord& r : trace.rows) {
        out << r.tick << ',' << detail::fmt_double(r.time) << ',' << r.phase;
        for (Vec2 p : r.positions)
            out << ',' << detail::fmt_double(p.x) << ',' << detail::fmt_double(p.y);
        for (Vec2 g : r.goals)
            out << ',' << detail::fmt_double(g.x) << ',' << detail::fmt_double(g.y);
        if (r.circle_center)
            out << ',' << detail::fmt_double(r.circle_center->x) << ','
                << detail::fmt_double(r.circle_center->y);
        else
            out << ",,";
        out << ',' << detail::fmt_double(r.formation_error);
        for (double d : r.distance_traveled) out << ',' << detail::fmt_double(d);
        out << ',' << (r.support_coverage ? 1 : 0) << '\n';
    }
}

inline void write_events(const SimTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SimError(Err::InvalidArgument, "cannot open " + path + " for writing");
    out << "tick,kind,payload\n";
    for (const Event& e : trace.events) out << e.tick << ',' << e.kind << ',' << e.payload << '\n';
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

/// Parse a trace CSV written by write_trace_csv. The agent count is
/// recovered from the header.
inline SimTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError(Err::ParseError, "cannot open trace file " + path);
    std::string header;
    if (!std::getline(in, header)) throw SimError(Err::EmptyTrace, "trace file has no header");

    const std::vector<std::string> cols = split(header, ',');
    int n = 0;
    for (const std::string& c : cols)
        if (c.size() > 2 && c[0] == 'a' && c.ends_with("_x")) ++n;
    const std::size_t expected = 3 + 4 * static_cast<std::size_t>(n) + 3 + n + 1;
    if (n == 0 || cols.size() != expected)
        throw SimError(Err::ParseError, "unrecognized trace header in " + path);

    SimTrace trace;
    trace.n_agents = n;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != expected)
            throw SimError(Err::ParseError, "trace row has " + std::to_string(f.size()) +
                                                " fields, expected " + std::to_string(expected));
        TickRecord r;
        std::size_t k = 0;
        r.tick = std::stol(f[k++]);
        r.time = std::stod(f[k++]);
        r.phase = std::stoi(f[k++]);
        for (int i = 0; i < n; ++i) {
            const double x = std::stod(f[k++]), y = std::stod(f[k++]);
            r.positions.push_back({x, y});
        }
        for (int i = 0; i < n; ++i) {
            const double x = std::stod(f[k++]), y = std::stod(f[k++]);
            r.goals.push_back({x, y});
        }
        if (!f[k].empty()) {
            const double x = std::stod(f[k]), y = std::stod(f[k + 1]);
            r.circle_center = Vec2{x, y};
        }
        k += 2;
        r.formation_error = std::stod(f[k++]);
        for (int i = 0; i < n; ++i) r.distance_traveled.push_back(std::stod(f[k++]));
        r.support_coverage = f[k] == "1";
        trace.rows.push_back(std::move(r));
    }
    if (trace.rows.size() >= 2) trace.dt = trace.rows[1].time - trace.rows[0].time;
    return trace;
}

inline std::vector<Event> read_events(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError(Err::ParseError, "cannot open events file " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<Event> events;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw SimError(Err::ParseError, "malformed event line: " + line);
        Event e;
        e.tick = std::stol(line.substr(0, first));
        e.kind = line.substr(first + 1, second - first - 1);
        e.payload = line.substr(second + 1);
        events.push_back(std::move(e));
    }
    return events;
}

}  // namespace swarmsim

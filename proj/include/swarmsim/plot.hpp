#pragma once

// Static SVG renderings of a recorded run: agent trajectories over the
// environment, region outlines at every plan epoch, formation error and
// cumulative per-agent distance against simulated time. Output is fully
// deterministic: fixed canvas, fixed element order, fixed %.3f coordinate
// formatting, and no timestamps or generator tags.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/trace.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Environment data recovered from the events log.
struct PlotContext {
    std::vector<Polygon> obstacles;
    Vec2 target;
    double r_c = 0.0;
    std::vector<std::pair<long, Vec2>> plan_centers;  // (epoch, center)
};

inline PlotContext plot_context_from_events(const std::vector<Event>& events) {
    PlotContext ctx;
    for (const Event& e : events) {
        std::istringstream in(e.payload);
        if (e.kind == "target") {
            in >> ctx.target.x >> ctx.target.y;
        } else if (e.kind == "meta") {
            std::string token;
            while (in >> token)
                if (token.starts_with("r_c=")) ctx.r_c = std::stod(token.substr(4));
        } else if (e.kind == "obstacle") {
            Polygon poly;
            double x, y;
            while (in >> x >> y) poly.vertices.push_back({x, y});
            ctx.obstacles.push_back(std::move(poly));
        } else if (e.kind == "plan") {
            long epoch;
            Vec2 c;
            in >> epoch >> c.x >> c.y;
            ctx.plan_centers.emplace_back(epoch, c);
        }
    }
    return ctx;
}

namespace detail {

constexpr double kCanvas = 800.0;
constexpr double kPad = 40.0;

struct ViewBox {
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;

    void include(Vec2 p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }

    static ViewBox around(Vec2 p) { return {p.x, p.y, p.x, p.y}; }

    // World -> canvas; y flips so +y points up in the image.
    Vec2 map(Vec2 p) const {
        const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
        const double scale = (kCanvas - 2 * kPad) / span;
        return {kPad + (p.x - min_x) * scale, kCanvas - kPad - (p.y - min_y) * scale};
    }
};

inline std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string svg_point(const ViewBox& vb, Vec2 p) {
    const Vec2 m = vb.map(p);
    return fmt3(m.x) + "," + fmt3(m.y);
}

inline void svg_open(std::ofstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out << "<title>" << title << "</title>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

inline const char* agent_color(int i) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[i % 10];
}

inline void draw_environment(std::ofstream& out, const ViewBox& vb, const PlotContext& ctx,
                             bool with_regions) {
    for (const Polygon& poly : ctx.obstacles) {
        out << "<polygon class=\"obstacle\" fill=\"#c8c8c8\" stroke=\"#555555\" points=\"";
        for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
            if (i) out << ' ';
            out << svg_point(vb, poly.vertices[i]);
        }
        out << "\"/>\n";
    }
    if (with_regions) {
        const double span = std::max({vb.max_x - vb.min_x, vb.max_y - vb.min_y, 1e-9});
        const double scale = (kCanvas - 2 * kPad) / span;
        for (const auto& [epoch, center] : ctx.plan_centers) {
            const Vec2 m = vb.map(center);
            out << "<circle class=\"region\" fill=\"none\" stroke=\"#6baed6\" "
                   "stroke-width=\"0.5\" cx=\""
                << fmt3(m.x) << "\" cy=\"" << fmt3(m.y) << "\" r=\"" << fmt3(ctx.r_c * scale)
                << "\"/>\n";
        }
    }
    const Vec2 t = vb.map(ctx.target);
    out << "<path class=\"target\" stroke=\"#d62728\" stroke-width=\"2\" d=\"M "
        << fmt3(t.x - 8) << ' ' << fmt3(t.y) << " L " << fmt3(t.x + 8) << ' ' << fmt3(t.y)
        << " M " << fmt3(t.x) << ' ' << fmt3(t.y - 8) << " L " << fmt3(t.x) << ' '
        << fmt3(t.y + 8) << "\"/>\n";
}

inline void axes(std::ofstream& out, const std::string& x_label, const std::string& y_label) {
    out << "<line x1=\"60\" y1=\"740\" x2=\"760\" y2=\"740\" stroke=\"black\"/>\n";
    out << "<line x1=\"60\" y1=\"740\" x2=\"60\" y2=\"60\" stroke=\"black\"/>\n";
    out << "<text x=\"400\" y=\"780\" text-anchor=\"middle\" font-size=\"16\">" << x_label
        << "</text>\n";
    out << "<text x=\"20\" y=\"400\" text-anchor=\"middle\" font-size=\"16\" "
           "transform=\"rotate(-90 20 400)\">"
        << y_label << "</text>\n";
}

/// Map a data series into the fixed axes box [60,760] x [60,740].
struct SeriesBox {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;

    Vec2 map(double x, double y) const {
        const double sx = (760.0 - 60.0) / std::max(max_x - min_x, 1e-12);
        const double sy = (740.0 - 60.0) / std::max(max_y - min_y, 1e-12);
        return {60.0 + (x - min_x) * sx, 740.0 - (y - min_y) * sy};
    }
};

inline void polyline(std::ofstream& out, const std::string& cls, const std::string& color,
                     const std::vector<Vec2>& pts) {
    out << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << fmt3(pts[i].x) << ',' << fmt3(pts[i].y);
    }
    out << "\"/>\n";
}

}  // namespace detail

/// Per-agent trajectory polylines over obstacles, region outlines at all
/// plan epochs, and the target marker.
inline void write_trajectories_svg(const SimTrace& trace, const PlotContext& ctx,
                                   const std::string& path, bool with_agents = true) {
    if (trace.rows.empty()) throw SimError(Err::EmptyTrace, "no rows to plot");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SimError(Err::InvalidArgument, "cannot open " + path);

    detail::ViewBox vb = detail::ViewBox::around(ctx.target);
    for (const Polygon& poly : ctx.obstacles)
        for (Vec2 v : poly.vertices) vb.include(v);
    for (const auto& [epoch, c] : ctx.plan_centers) {
        vb.include(c + Vec2{ctx.r_c, ctx.r_c});
        vb.include(c - Vec2{ctx.r_c, ctx.r_c});
    }
    for (const TickRecord& r : trace.rows)
        for (Vec2 p : r.positions) vb.include(p);

    detail::svg_open(out, with_agents ? "agent trajectories" : "planned regions");
    detail::draw_environment(out, vb, ctx, true);
    if (with_agents) {
        for (int i = 0; i < trace.n_agents; ++i) {
            std::vector<Vec2> pts;
            pts.reserve(trace.rows.size());
            for (const TickRecord& r : trace.rows) pts.push_back(vb.map(r.positions[i]));
            detail::polyline(out, "agent", detail::agent_color(i), pts);
        }
    }
    out << "</svg>\n";
}

inline void write_regions_svg(const SimTrace& trace, const PlotContext& ctx,
                              const std::string& path) {
    write_trajectories_svg(trace, ctx, path, false);
}

/// Formation error against simulated time.
inline void write_formation_error_svg(const SimTrace& trace, const std::string& path) {
    if (trace.rows.empty()) throw SimError(Err::EmptyTrace, "no rows to plot");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SimError(Err::InvalidArgument, "cannot open " + path);

    detail::SeriesBox box;
    box.max_x = std::max(trace.rows.back().time, 1e-9);
    box.max_y = 1e-12;
    for (const TickRecord& r : trace.rows) box.max_y = std::max(box.max_y, r.formation_error);

    detail::svg_open(out, "formation error");
    detail::axes(out, "time [s]", "formation error [world units]");
    std::vector<Vec2> pts;
    pts.reserve(trace.rows.size());
    for (const TickRecord& r : trace.rows) pts.push_back(box.map(r.time, r.formation_error));
    detail::polyline(out, "formation-error", "#1f77b4", pts);
    out << "</svg>\n";
}

/// Cumulative distance traveled per agent against simulated time.
inline void write_distance_svg(const SimTrace& trace, const std::string& path) {
    if (trace.rows.empty()) throw SimError(Err::EmptyTrace, "no rows to plot");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SimError(Err::InvalidArgument, "cannot open " + path);

    detail::SeriesBox box;
    box.max_x = std::max(trace.rows.back().time, 1e-9);
    box.max_y = 1e-12;
    for (double d : trace.rows.back().distance_traveled) box.max_y = std::max(box.max_y, d);

    detail::svg_open(out, "distance traveled");
    detail::axes(out, "time [s]", "cumulative distance [world units]");
    for (int i = 0; i < trace.n_agents; ++i) {
        std::vector<Vec2> pts;
        pts.reserve(trace.rows.size());
        for (const TickRecord& r : trace.rows)
            pts.push_back(box.map(r.time, r.distance_traveled[i]));
        detail::polyline(out, "distance", detail::agent_color(i), pts);
    }
    out << "</svg>\n";
}

}  // namespace swarmsim

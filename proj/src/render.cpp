#include "tfmn/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "tfmn/rng.hpp"

namespace tfmn {

namespace {

constexpr double kHalfSqrt2 = 0.7071067811865476;

// Unit directions for the eight petals, wheel order, counterclockwise from
// east; SVG y grows downward so the y component is negated.
constexpr double kDirX[kEmotionCount] = {1,  kHalfSqrt2, 0, -kHalfSqrt2,
                                         -1, -kHalfSqrt2, 0, kHalfSqrt2};
constexpr double kDirY[kEmotionCount] = {0, -kHalfSqrt2, -1, -kHalfSqrt2,
                                         0, kHalfSqrt2,  1,  kHalfSqrt2};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // -0.000 and 0.000 are the same point; pin one spelling.
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

void tag_text(std::string& svg, double x, double y, const std::string& text,
              const std::string& attrs) {
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " + attrs + ">" + text +
           "</text>\n";
}

std::string svg_open(double width, double height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
           "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
           num(height) +
           "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">\n" +
           "<rect width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" fill=\"#ffffff\"/>\n";
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

double wheel_radius(double z, const WheelSpec& spec) {
    const double rmax = spec.size / 2.0 - 58.0;
    const double mag = std::min(std::fabs(z), spec.clamp_z);
    return mag / spec.clamp_z * rmax;
}

std::string render_wheel(const EmotionProfile& profile, const WheelSpec& spec) {
    const double c = spec.size / 2.0;
    const double rmax = wheel_radius(spec.clamp_z, spec);
    const double ring = wheel_radius(kSignificanceZ, spec);

    std::string svg = svg_open(spec.size, spec.size);
    if (!spec.title.empty())
        tag_text(svg, c, 18, escape_xml(spec.title),
                 "text-anchor=\"middle\" font-size=\"14\" fill=\"#333333\"");

    svg += "<circle cx=\"" + num(c) + "\" cy=\"" + num(c) + "\" r=\"" + num(rmax) +
           "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
    // Band where |z| < 1.96: nothing inside it is significant.
    svg += "<circle cx=\"" + num(c) + "\" cy=\"" + num(c) + "\" r=\"" + num(ring) +
           "\" fill=\"#d9d9d9\" fill-opacity=\"0.6\" stroke=\"#aaaaaa\"/>\n";

    for (Emotion e : kEmotions) {
        const size_t i = static_cast<size_t>(e);
        const double ux = kDirX[i];
        const double uy = kDirY[i];
        const double px = -uy;
        const double py = ux;
        if (profile.z_defined[i]) {
            const double len = wheel_radius(profile.z[i], spec);
            const double w = 0.30 * len;
            const double mx = c + 0.55 * len * ux;
            const double my = c + 0.55 * len * uy;
            const std::string tip_x = num(c + len * ux);
            const std::string tip_y = num(c + len * uy);
            const std::string fill =
                profile.significant[i] ? kEmotionColor[i] : "#ffffff";
            svg += "<path d=\"M " + num(c) + " " + num(c) + " Q " + num(mx + w * px) +
                   " " + num(my + w * py) + " " + tip_x + " " + tip_y + " Q " +
                   num(mx - w * px) + " " + num(my - w * py) + " " + num(c) + " " +
                   num(c) + " Z\" fill=\"" + fill + "\" fill-opacity=\"0.85\" stroke=\"" +
                   kEmotionColor[i] + "\" stroke-width=\"1.5\"/>\n";
        } else {
            // Undefined z: no petal, just a hatched tick on the axis.
            svg += "<line x1=\"" + num(c + 4 * ux) + "\" y1=\"" + num(c + 4 * uy) +
                   "\" x2=\"" + num(c + 16 * ux) + "\" y2=\"" + num(c + 16 * uy) +
                   "\" stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"2,2\"/>\n";
        }
        const double lx = c + (rmax + 24) * ux;
        const double ly = c + (rmax + 24) * uy;
        tag_text(svg, lx, ly, std::string(emotion_name(e)),
                 "text-anchor=\"middle\" fill=\"#333333\"");
        const std::string zlabel =
            profile.z_defined[i] ? "z=" + num(profile.z[i]) : "z=n/a";
        tag_text(svg, lx, ly + 13, zlabel,
                 "text-anchor=\"middle\" font-size=\"10\" fill=\"#777777\"");
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_network(const Tfmn& net, const std::string& target,
                           const Partition* partition, const NetworkSpec& spec) {
    std::vector<std::string> stems;
    for (const auto& [stem, set] : net.nodes()) {
        (void)set;
        stems.push_back(stem);
    }
    const size_t n = stems.size();
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < n; ++i) index.emplace(stems[i], i);
    if (partition) {
        for (const auto& stem : stems)
            if (!partition->community.count(stem))
                throw ValidationError("partition misses node \"" + stem + "\"");
    }

    std::vector<double> x(n), y(n);
    SplitMix64 g(spec.seed);
    for (size_t i = 0; i < n; ++i) {
        x[i] = g.next_double() * spec.size;
        y[i] = g.next_double() * spec.size;
    }

    struct Edge {
        size_t a, b;
        int64_t syntactic, synonym;
    };
    std::vector<Edge> edges;
    for (const auto& [key, w] : net.edges())
        edges.push_back({index.at(key.first), index.at(key.second), w.syntactic, w.synonym});

    if (n > 1) {
        const double k = std::sqrt(spec.size * spec.size / static_cast<double>(n));
        double t = spec.size / 10.0;
        const double cool = t / static_cast<double>(spec.iterations + 1);
        std::vector<double> dx(n), dy(n);
        for (int iter = 0; iter < spec.iterations; ++iter) {
            for (size_t i = 0; i < n; ++i) {
                dx[i] = 0;
                dy[i] = 0;
            }
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) {
                    double ex = x[i] - x[j];
                    double ey = y[i] - y[j];
                    double d2 = ex * ex + ey * ey;
                    if (d2 < 1e-6) {  // deterministic nudge for coincident nodes
                        ex = 0.001 * static_cast<double>(j - i);
                        ey = 0.001;
                        d2 = ex * ex + ey * ey;
                    }
                    const double d = std::sqrt(d2);
                    const double rep = k * k / d;
                    dx[i] += ex / d * rep;
                    dy[i] += ey / d * rep;
                    dx[j] -= ex / d * rep;
                    dy[j] -= ey / d * rep;
                }
            for (const Edge& e : edges) {
                double ex = x[e.a] - x[e.b];
                double ey = y[e.a] - y[e.b];
                double d2 = ex * ex + ey * ey;
                if (d2 < 1e-6) continue;
                const double d = std::sqrt(d2);
                const double att = d * d / k;
                dx[e.a] -= ex / d * att;
                dy[e.a] -= ey / d * att;
                dx[e.b] += ex / d * att;
                dy[e.b] += ey / d * att;
            }
            for (size_t i = 0; i < n; ++i) {
                const double len = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
                if (len > 0) {
                    const double step = len < t ? len : t;
                    x[i] += dx[i] / len * step;
                    y[i] += dy[i] / len * step;
                }
            }
            t -= cool;
        }
        // Rescale into the canvas with a margin.
        double min_x = x[0], max_x = x[0], min_y = y[0], max_y = y[0];
        for (size_t i = 1; i < n; ++i) {
            min_x = std::min(min_x, x[i]);
            max_x = std::max(max_x, x[i]);
            min_y = std::min(min_y, y[i]);
            max_y = std::max(max_y, y[i]);
        }
        const double margin = 46;
        const double span_x = max_x - min_x;
        const double span_y = max_y - min_y;
        for (size_t i = 0; i < n; ++i) {
            x[i] = span_x > 0
                       ? margin + (x[i] - min_x) / span_x * (spec.size - 2 * margin)
                       : spec.size / 2;
            y[i] = span_y > 0
                       ? margin + (y[i] - min_y) / span_y * (spec.size - 2 * margin)
                       : spec.size / 2;
        }
    } else if (n == 1) {
        x[0] = spec.size / 2;
        y[0] = spec.size / 2;
    }

    std::string svg = svg_open(spec.size, spec.size);
    if (!spec.title.empty())
        tag_text(svg, spec.size / 2, 20, escape_xml(spec.title),
                 "text-anchor=\"middle\" font-size=\"14\" fill=\"#333333\"");
    for (const Edge& e : edges) {
        const bool synonym_only = e.synonym > 0 && e.syntactic == 0;
        const double w =
            0.8 + 0.6 * std::sqrt(static_cast<double>(e.syntactic + e.synonym));
        svg += "<line x1=\"" + num(x[e.a]) + "\" y1=\"" + num(y[e.a]) + "\" x2=\"" +
               num(x[e.b]) + "\" y2=\"" + num(y[e.b]) + "\" stroke=\"" +
               (synonym_only ? "#bbaacc" : "#b0b0b0") + "\" stroke-width=\"" + num(w) +
               "\"" + (synonym_only ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
    }
    for (size_t i = 0; i < n; ++i) {
        const bool is_target = stems[i] == target;
        const int deg = net.degree(stems[i], Layer::combined);
        double r = 5.0 + 1.5 * std::sqrt(static_cast<double>(deg));
        if (is_target) r *= 1.5;
        std::string fill = "#4e79a7";
        if (partition) {
            const int comm = partition->community.at(stems[i]);
            fill = kCommunityColor[static_cast<size_t>(comm) % kCommunityColor.size()];
        }
        svg += "<circle cx=\"" + num(x[i]) + "\" cy=\"" + num(y[i]) + "\" r=\"" + num(r) +
               "\" fill=\"" + fill + "\" stroke=\"" +
               (is_target ? "#000000" : "#ffffff") + "\" stroke-width=\"" +
               (is_target ? "2.5" : "1") + "\"/>\n";
        tag_text(svg, x[i], y[i] - r - 4, escape_xml(stems[i]),
                 std::string("text-anchor=\"middle\" fill=\"#333333\"") +
                     (is_target ? " font-weight=\"bold\"" : ""));
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_timeseries(const TemporalProfile& series, const TimeseriesSpec& spec) {
    const double ml = 52, mr = 150, mt = 34, mb = 40;
    const double plot_w = spec.width - ml - mr;
    const double plot_h = spec.height - mt - mb;
    const double zmax = 6;

    auto y_of = [&](double z) {
        double clamped = std::max(-zmax, std::min(zmax, z));
        return mt + (zmax - clamped) / (2 * zmax) * plot_h;
    };

    std::string svg = svg_open(spec.width, spec.height);
    if (!spec.title.empty())
        tag_text(svg, ml + plot_w / 2, 20, escape_xml(spec.title),
                 "text-anchor=\"middle\" font-size=\"14\" fill=\"#333333\"");

    // Frame, significance band, zero line, y ticks.
    svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(y_of(kSignificanceZ)) + "\" width=\"" +
           num(plot_w) + "\" height=\"" +
           num(y_of(-kSignificanceZ) - y_of(kSignificanceZ)) +
           "\" fill=\"#ededed\"/>\n";
    svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#888888\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(y_of(0)) + "\" x2=\"" +
           num(ml + plot_w) + "\" y2=\"" + num(y_of(0)) +
           "\" stroke=\"#bbbbbb\" stroke-dasharray=\"3,3\"/>\n";
    for (int tick = -6; tick <= 6; tick += 2)
        tag_text(svg, ml - 8, y_of(tick) + 4, std::to_string(tick),
                 "text-anchor=\"end\" font-size=\"10\" fill=\"#555555\"");

    if (!series.points.empty()) {
        const int32_t first = series.points.front().date.serial;
        const int32_t last = series.points.back().date.serial;
        auto x_of = [&](Date d) {
            if (last == first) return ml + plot_w / 2;
            return ml + static_cast<double>(d.serial - first) /
                            static_cast<double>(last - first) * plot_w;
        };
        tag_text(svg, ml, spec.height - 14, format_date(series.points.front().date),
                 "text-anchor=\"start\" font-size=\"10\" fill=\"#555555\"");
        if (last != first)
            tag_text(svg, ml + plot_w, spec.height - 14,
                     format_date(series.points.back().date),
                     "text-anchor=\"end\" font-size=\"10\" fill=\"#555555\"");

        for (Emotion e : kEmotions) {
            const size_t i = static_cast<size_t>(e);
            const std::string color =
                series.persistent[i] ? kEmotionColor[i] : "#c4c4c4";
            std::string points;
            bool open = false;
            auto flush = [&]() {
                if (open && points.find(' ') != std::string::npos)
                    svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
                           color + "\" stroke-width=\"" +
                           (series.persistent[i] ? "2" : "1.2") + "\"/>\n";
                points.clear();
                open = false;
            };
            for (const TemporalPoint& p : series.points) {
                if (!p.rolled_defined[i]) {
                    flush();
                    continue;
                }
                if (open) points += ' ';
                points += num(x_of(p.date)) + "," + num(y_of(p.z_rolled[i]));
                open = true;
            }
            flush();
        }
    }

    // Legend.
    double ly = mt + 6;
    for (Emotion e : kEmotions) {
        const size_t i = static_cast<size_t>(e);
        const std::string color = series.persistent[i] ? kEmotionColor[i] : "#c4c4c4";
        svg += "<line x1=\"" + num(ml + plot_w + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(ml + plot_w + 34) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        tag_text(svg, ml + plot_w + 40, ly + 4,
                 std::string(emotion_name(e)) + (series.persistent[i] ? " *" : ""),
                 "font-size=\"11\" fill=\"#333333\"");
        ly += 16;
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_heatmap(const HeatmapBins& bins, const HeatmapSpec& spec) {
    const size_t nx = bins.counts.size();
    const size_t ny = nx ? bins.counts[0].size() : 0;
    if (nx == 0 || ny == 0) throw ValidationError("heatmap has no bins");
    const double ml = 86, mt = 40, mb = 60, mr = 30;
    const double width = ml + spec.cell * static_cast<double>(nx) + mr;
    const double height = mt + spec.cell * static_cast<double>(ny) + mb;

    int64_t max_count = 0;
    for (const auto& row : bins.counts)
        for (int64_t c : row) max_count = std::max(max_count, c);

    auto shade = [&](int64_t count) {
        // White to dark blue, linear in count / max.
        const double f =
            max_count > 0 ? static_cast<double>(count) / static_cast<double>(max_count) : 0;
        const int r = static_cast<int>(247 + (8 - 247) * f + 0.5);
        const int g = static_cast<int>(251 + (48 - 251) * f + 0.5);
        const int b = static_cast<int>(255 + (107 - 255) * f + 0.5);
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    auto edge_label = [&](const std::vector<double>& edges, size_t bin) {
        if (bin == 0) return std::string("0");
        const double v = edges[bin - 1];
        if (v == std::floor(v) && std::fabs(v) < 1e15) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
            return std::string(buf);
        }
        return num(v);
    };

    std::string svg = svg_open(width, height);
    if (!spec.title.empty())
        tag_text(svg, width / 2, 20, escape_xml(spec.title),
                 "text-anchor=\"middle\" font-size=\"14\" fill=\"#333333\"");

    for (size_t i = 0; i < nx; ++i)
        for (size_t j = 0; j < ny; ++j) {
            const double px = ml + spec.cell * static_cast<double>(i);
            const double py = mt + spec.cell * static_cast<double>(ny - 1 - j);
            svg += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" +
                   num(spec.cell) + "\" height=\"" + num(spec.cell) + "\" fill=\"" +
                   shade(bins.counts[i][j]) + "\" stroke=\"#ffffff\"/>\n";
            if (bins.counts[i][j] > 0)
                tag_text(svg, px + spec.cell / 2, py + spec.cell / 2 + 4,
                         std::to_string(bins.counts[i][j]),
                         std::string("text-anchor=\"middle\" font-size=\"10\" fill=\"") +
                             (2 * bins.counts[i][j] > max_count ? "#ffffff" : "#333333") +
                             "\"");
        }

    for (size_t i = 0; i < nx; ++i)
        tag_text(svg, ml + spec.cell * static_cast<double>(i) + 2,
                 mt + spec.cell * static_cast<double>(ny) + 14, edge_label(bins.x_edges, i),
                 "font-size=\"10\" fill=\"#555555\"");
    for (size_t j = 0; j < ny; ++j)
        tag_text(svg, ml - 6, mt + spec.cell * static_cast<double>(ny - 1 - j) + spec.cell - 2,
                 edge_label(bins.y_edges, j),
                 "text-anchor=\"end\" font-size=\"10\" fill=\"#555555\"");
    tag_text(svg, ml + spec.cell * static_cast<double>(nx) / 2,
             mt + spec.cell * static_cast<double>(ny) + 36, escape_xml(spec.x_label),
             "text-anchor=\"middle\" fill=\"#333333\"");
    tag_text(svg, 16, mt - 10, escape_xml(spec.y_label),
             "text-anchor=\"start\" fill=\"#333333\"");
    svg += "</svg>\n";
    return svg;
}

}  // namespace tfmn

#ifndef TFMN_RENDER_HPP
#define TFMN_RENDER_HPP

#include <array>
#include <optional>
#include <string>

#include "tfmn/frames.hpp"
#include "tfmn/graphstats.hpp"
#include "tfmn/stats.hpp"

namespace tfmn {

// Byte-deterministic SVG: every coordinate is printed with "%.3f", layout
// randomness is seeded, and no locale- or platform-dependent call is made.

inline constexpr std::array<const char*, kEmotionCount> kEmotionColor = {
    "#f4c430",  // joy
    "#9acd32",  // trust
    "#228b22",  // fear
    "#40b0cf",  // surprise
    "#3b6bb5",  // sadness
    "#8e44ad",  // disgust
    "#d62728",  // anger
    "#ff8c42",  // anticipation
};

inline constexpr std::array<const char*, 10> kCommunityColor = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
};

struct WheelSpec {
    double size = 420;     // square canvas, px
    double clamp_z = 6;    // |z| rendered radius saturates here
    std::string title;
};

// Radius in px at which |z| renders; the grey disc ends at wheel_radius(1.96).
double wheel_radius(double z, const WheelSpec& spec);

// Eight-petal polar plot: petal length |z| (clamped), grey disc spanning the
// non-significant band, white-filled petals when not significant, a hatch
// tick instead of a petal when z is undefined.
std::string render_wheel(const EmotionProfile& profile, const WheelSpec& spec = {});

struct NetworkSpec {
    double size = 640;
    int iterations = 300;
    uint64_t seed = 0;
    std::string title;
};

// Seeded Fruchterman-Reingold layout (fixed iteration count, +-*/sqrt only).
// Nodes take their community color when a partition is given; the partition
// must cover every node. The target node, when present, is emphasised.
std::string render_network(const Tfmn& net, const std::string& target,
                           const Partition* partition, const NetworkSpec& spec = {});

struct TimeseriesSpec {
    double width = 760;
    double height = 360;
    std::string title;
};

// Rolled z per emotion over time: persistent emotions in color, the rest
// grey, with the +-1.96 band shaded. An empty series yields an axes-only
// document.
std::string render_timeseries(const TemporalProfile& series,
                              const TimeseriesSpec& spec = {});

struct HeatmapSpec {
    double cell = 36;
    std::string title;
    std::string x_label = "twitter shares";
    std::string y_label = "facebook shares";
};

std::string render_heatmap(const HeatmapBins& bins, const HeatmapSpec& spec = {});

}  // namespace tfmn

#endif

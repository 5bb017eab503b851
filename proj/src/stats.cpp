#include "tfmn/stats.hpp"

#include "tfmn/core.hpp"
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "tfmn/rng.hpp"
#include "json.hpp"

namespace tfmn {

namespace {

double raw_pearson_r(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        throw ValidationError("correlation is undefined for a constant series");
    double r = sxy / std::sqrt(sxx * syy);
    return std::min(1.0, std::max(-1.0, r));
}

void check_pair_lengths(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw ValidationError("series lengths differ: " + std::to_string(xs.size()) +
                              " vs " + std::to_string(ys.size()));
    if (xs.size() < 3) throw ValidationError("correlation needs at least 3 pairs");
}

double betacf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 3e-16;
    const double qab = a + b;
    const double qap = a + 1;
    const double qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw ValidationError("incomplete beta requires a, b > 0");
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
    return 1 - front * betacf(b, a, 1 - x) / b;
}

Correlation pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    check_pair_lengths(xs, ys);
    Correlation c;
    c.n = xs.size();
    c.r = raw_pearson_r(xs, ys);
    const double one_minus_r2 = (1.0 - c.r) * (1.0 + c.r);
    if (one_minus_r2 <= 0) {
        c.p = 0;
        return c;
    }
    const double dof = static_cast<double>(c.n - 2);
    const double t = c.r * std::sqrt(dof / one_minus_r2);
    c.p = incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
    return c;
}

double permutation_pvalue(const std::vector<double>& xs, const std::vector<double>& ys,
                          int permutations, uint64_t seed) {
    check_pair_lengths(xs, ys);
    if (permutations < 1) throw ValidationError("permutation count must be >= 1");
    const double observed = std::fabs(raw_pearson_r(xs, ys));
    SplitMix64 g(seed);
    std::vector<double> perm = ys;
    int as_large = 0;
    for (int i = 0; i < permutations; ++i) {
        shuffle(perm, g);
        double r;
        try {
            r = raw_pearson_r(xs, perm);
        } catch (const ValidationError&) {
            r = 0;  // degenerate shuffle of a near-constant series
        }
        if (std::fabs(r) >= observed) as_large += 1;
    }
    return (1.0 + as_large) / (1.0 + permutations);
}

namespace {

// 0 = underflow (value 0); 1 + k for base^k <= v < base^(k+1).
int heat_bin(int64_t v, double base) {
    if (v == 0) return 0;
    double edge = 1;
    int k = 0;
    while (edge * base <= static_cast<double>(v)) {
        edge *= base;
        k += 1;
    }
    return 1 + k;
}

}  // namespace

int64_t HeatmapBins::total() const {
    int64_t t = 0;
    for (const auto& row : counts)
        for (int64_t c : row) t += c;
    return t;
}

HeatmapBins log_bin_heatmap(const std::vector<std::pair<int64_t, int64_t>>& pairs,
                            double base) {
    if (!(base > 1)) throw ValidationError("heatmap base must be > 1");
    std::vector<std::pair<int, int>> bins;
    bins.reserve(pairs.size());
    int max_x = 0, max_y = 0;
    for (const auto& [x, y] : pairs) {
        if (x < 0 || y < 0) throw ValidationError("share counts must be non-negative");
        const int bx = heat_bin(x, base);
        const int by = heat_bin(y, base);
        bins.emplace_back(bx, by);
        max_x = std::max(max_x, bx);
        max_y = std::max(max_y, by);
    }
    HeatmapBins out;
    out.base = base;
    const int geo_x = std::max(1, max_x);
    const int geo_y = std::max(1, max_y);
    double edge = 1;
    for (int i = 0; i <= geo_x; ++i, edge *= base) out.x_edges.push_back(edge);
    edge = 1;
    for (int i = 0; i <= geo_y; ++i, edge *= base) out.y_edges.push_back(edge);
    out.counts.assign(static_cast<size_t>(geo_x) + 1,
                      std::vector<int64_t>(static_cast<size_t>(geo_y) + 1, 0));
    for (const auto& [bx, by] : bins)
        out.counts[static_cast<size_t>(bx)][static_cast<size_t>(by)] += 1;
    return out;
}

PrevalenceSeries prevalence_series(const ArticleSet& articles, const std::string& target,
                                   TextField field, std::optional<OutletClass> outlet,
                                   Language language, int window) {
    if (window < 1) throw ValidationError("smoothing window must be >= 1");
    std::map<Date, PrevalencePoint> days;
    for (const Article& a : articles.articles()) {
        if (outlet && a.outlet_class != *outlet) continue;
        PrevalencePoint& p = days[a.date];
        p.date = a.date;
        p.total += 1;
        if (article_mentions(a, target, field, language)) p.mentioning += 1;
    }
    PrevalenceSeries s;
    s.window = window;
    std::vector<std::pair<Date, double>> series;
    for (auto& [date, p] : days) {
        (void)date;
        p.fraction = static_cast<double>(p.mentioning) / static_cast<double>(p.total);
        s.points.push_back(p);
        series.emplace_back(p.date, p.fraction);
    }
    s.smoothed = moving_average(series, window);
    return s;
}

std::vector<double> moving_average(const std::vector<std::pair<Date, double>>& series,
                                   int window) {
    if (window < 1) throw ValidationError("moving average window must be >= 1");
    for (size_t i = 1; i < series.size(); ++i)
        if (!(series[i - 1].first < series[i].first))
            throw ValidationError("moving average requires strictly increasing dates");
    std::vector<double> out(series.size());
    for (size_t i = 0; i < series.size(); ++i) {
        const size_t first =
            i + 1 >= static_cast<size_t>(window) ? i + 1 - static_cast<size_t>(window) : 0;
        double sum = 0;
        for (size_t j = first; j <= i; ++j) sum += series[j].second;
        out[i] = sum / static_cast<double>(i - first + 1);
    }
    return out;
}

const char* platform_name(Platform p) {
    return p == Platform::twitter ? "twitter" : "facebook";
}

ShareSummary platform_share_summary(const ArticleSet& articles) {
    ShareSummary s;
    if (articles.articles().empty()) return s;
    const DateRange window = articles.observation_window();
    const Date anchor = iso_week_start(*window.start);

    std::map<Date, ShareWeekRow> weeks;
    for (const Article& a : articles.articles()) {
        const size_t cls = static_cast<size_t>(a.outlet_class);
        s.totals[0][cls] += a.shares_twitter;
        s.totals[1][cls] += a.shares_facebook;
        const Date start = iso_week_start(a.date);
        ShareWeekRow& row = weeks[start];
        row.week_start = start;
        row.week = iso_week(a.date);
        row.week_index = static_cast<int>((start.serial - anchor.serial) / 7) + 1;
        row.shares[0][cls] += a.shares_twitter;
        row.shares[1][cls] += a.shares_facebook;
    }
    for (auto& [start, row] : weeks) {
        (void)start;
        s.weeks.push_back(row);
    }
    for (size_t p = 0; p < 2; ++p) {
        const double denom =
            static_cast<double>(s.totals[p][0]) + static_cast<double>(s.totals[p][1]);
        s.alternative_pct[p] = denom > 0 ? 100.0 * static_cast<double>(s.totals[p][1]) / denom : 0;
    }
    return s;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string format_edge(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    return format_real(v);
}

}  // namespace

std::string correlation_json(const Correlation& c, const std::string& label) {
    nlohmann::json j;
    j["label"] = label;
    j["r"] = c.r;
    j["p"] = c.p;
    j["n"] = c.n;
    return j.dump(2) + "\n";
}

std::string prevalence_csv(const PrevalenceSeries& s) {
    std::string out = "date,mentioning,total,fraction,smoothed\n";
    for (size_t i = 0; i < s.points.size(); ++i) {
        const PrevalencePoint& p = s.points[i];
        out += format_date(p.date);
        out += ',';
        out += std::to_string(p.mentioning);
        out += ',';
        out += std::to_string(p.total);
        out += ',';
        out += format_real(p.fraction);
        out += ',';
        out += format_real(s.smoothed[i]);
        out += '\n';
    }
    return out;
}

std::string share_summary_csv(const ShareSummary& s) {
    std::string out = "platform,mainstream,alternative,alternative_pct\n";
    for (Platform p : kPlatforms) {
        const size_t i = static_cast<size_t>(p);
        out += platform_name(p);
        out += ',';
        out += std::to_string(s.totals[i][0]);
        out += ',';
        out += std::to_string(s.totals[i][1]);
        out += ',';
        out += format_real(s.alternative_pct[i]);
        out += '\n';
    }
    return out;
}

std::string share_weeks_csv(const ShareSummary& s) {
    std::string out =
        "iso_year,iso_week,week_start,week_index,"
        "twitter_mainstream,twitter_alternative,facebook_mainstream,facebook_alternative\n";
    for (const ShareWeekRow& row : s.weeks) {
        out += std::to_string(row.week.year);
        out += ',';
        out += std::to_string(row.week.week);
        out += ',';
        out += format_date(row.week_start);
        out += ',';
        out += std::to_string(row.week_index);
        for (size_t p = 0; p < 2; ++p)
            for (size_t c = 0; c < 2; ++c) {
                out += ',';
                out += std::to_string(row.shares[p][c]);
            }
        out += '\n';
    }
    return out;
}

std::string heatmap_csv(const HeatmapBins& bins) {
    std::string out = "x_edges";
    for (double e : bins.x_edges) {
        out += ',';
        out += format_edge(e);
    }
    out += "\ny_edges";
    for (double e : bins.y_edges) {
        out += ',';
        out += format_edge(e);
    }
    out += '\n';
    for (const auto& row : bins.counts) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += std::to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace tfmn

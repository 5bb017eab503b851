#ifndef TFMN_STATS_HPP
#define TFMN_STATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfmn/corpus.hpp"
#include "tfmn/date.hpp"

namespace tfmn {

struct Correlation {
    double r = 0;
    double p = 1;  // two-sided, from the t distribution with n-2 dof
    size_t n = 0;
};

// Pearson correlation, two-pass. Errors on length mismatch, fewer than three
// pairs, or a zero-variance side. |r| = 1 yields p = 0.
Correlation pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Regularized incomplete beta I_x(a, b) by continued fraction; exposed so the
// p-value path can be checked against quadrature.
double incomplete_beta(double a, double b, double x);

// Seeded permutation p-value for the same r: fraction of |r| over shuffled
// pairings at least as large as observed, with add-one smoothing.
double permutation_pvalue(const std::vector<double>& xs, const std::vector<double>& ys,
                          int permutations, uint64_t seed);

// Two-dimensional histogram over geometric bins [base^k, base^(k+1)) with a
// dedicated underflow bin for zeros. x_edges/y_edges hold the geometric
// boundaries 1, base, base^2, ...; counts[0][*] / counts[*][0] are underflow.
struct HeatmapBins {
    double base = 10;
    std::vector<double> x_edges;
    std::vector<double> y_edges;
    std::vector<std::vector<int64_t>> counts;  // (1 + x bins) x (1 + y bins)

    int64_t total() const;
};

HeatmapBins log_bin_heatmap(const std::vector<std::pair<int64_t, int64_t>>& pairs,
                            double base);

struct PrevalencePoint {
    Date date;
    int64_t mentioning = 0;
    int64_t total = 0;
    double fraction = 0;
};

struct PrevalenceSeries {
    std::vector<PrevalencePoint> points;   // days with >= 1 article only
    std::vector<double> smoothed;          // trailing mean of fraction, aligned
    int window = 7;
};

// Daily fraction of articles (optionally restricted to one outlet class)
// mentioning the target. Days without articles are gaps.
PrevalenceSeries prevalence_series(const ArticleSet& articles, const std::string& target,
                                   TextField field, std::optional<OutletClass> outlet,
                                   Language language, int window = 7);

// Trailing mean over up-to-window most recent points; shorter at the head.
// Errors when dates are not strictly increasing.
std::vector<double> moving_average(const std::vector<std::pair<Date, double>>& series,
                                   int window);

enum class Platform { twitter, facebook };

inline constexpr Platform kPlatforms[] = {Platform::twitter, Platform::facebook};

const char* platform_name(Platform p);

struct ShareWeekRow {
    IsoWeek week;
    Date week_start;
    int week_index = 0;  // 1-based; week 1 holds the observation window start
    int64_t shares[2][2] = {};  // [platform][outlet class]
};

struct ShareSummary {
    int64_t totals[2][2] = {};         // [platform][outlet class]
    double alternative_pct[2] = {};    // per platform; 0 when the platform has no shares
    std::vector<ShareWeekRow> weeks;   // ascending, ISO-week aligned
};

ShareSummary platform_share_summary(const ArticleSet& articles);

std::string correlation_json(const Correlation& c, const std::string& label);
std::string prevalence_csv(const PrevalenceSeries& s);
std::string share_summary_csv(const ShareSummary& s);
std::string share_weeks_csv(const ShareSummary& s);
std::string heatmap_csv(const HeatmapBins& bins);

}  // namespace tfmn

#endif

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support/helpers.hpp"
#include "tfmn/rng.hpp"
#include "tfmn/stats.hpp"

using namespace tfmn;

namespace {

const std::string kFixtures = std::string(TFMN_SOURCE_DIR) + "/tests/fixtures/";

// ---- quadrature oracle --------------------------------------------------
// Two-sided p for a t statistic: p = 1 - 2 * integral_0^|t| f(u) du with the
// Student-t density, integrated by adaptive Simpson. Smooth on the whole
// domain, so the quadrature is an independent check of the incomplete-beta
// path in the implementation.

double simpson(const std::function<double(double)>& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double eps, double whole, int depth) {
    const double mid = (a + b) / 2.0;
    const double left = simpson(f, a, mid);
    const double right = simpson(f, mid, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, mid, eps / 2.0, left, depth - 1) +
           adaptive_simpson(f, mid, b, eps / 2.0, right, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    return adaptive_simpson(f, a, b, 1e-14, simpson(f, a, b), 60);
}

double t_density(double u, double dof) {
    const double ln_norm = std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0) -
                           0.5 * std::log(dof * std::numbers::pi);
    return std::exp(ln_norm - (dof + 1.0) / 2.0 * std::log1p(u * u / dof));
}

double quadrature_pvalue(double t, double dof) {
    const double at = std::fabs(t);
    if (at == 0.0) return 1.0;
    const double central = integrate([dof](double u) { return t_density(u, dof); }, 0.0, at);
    return 1.0 - 2.0 * central;
}

double oracle_r(const std::vector<double>& xs, const std::vector<double>& ys) {
    long double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<long double>(xs.size());
    my /= static_cast<long double>(xs.size());
    long double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return static_cast<double>(sxy / sqrtl(sxx * syy));
}

}  // namespace

// ---------------------------------------------------------------------------
// pearson
// ---------------------------------------------------------------------------

TEST_CASE("exact linear fixtures give r of plus and minus one with p zero") {
    const Correlation up = pearson({1, 2, 3}, {2, 4, 6});
    CHECK(up.r == 1.0);
    CHECK(up.p == 0.0);
    CHECK(up.n == 3);

    const Correlation down = pearson({1, 2, 3}, {3, 2, 1});
    CHECK(down.r == -1.0);
    CHECK(down.p == 0.0);

    // Affine images of a line stay on it.
    const Correlation shifted = pearson({10, 20, 30, 40}, {-3, -13, -23, -33});
    CHECK(shifted.r == -1.0);
    CHECK(shifted.p == 0.0);
}

TEST_CASE("three-point fixture matches the closed-form Cauchy p") {
    // xs (0,1,2), ys (0,1,3): r = 3/sqrt(28/3), t = 3*sqrt(3), dof = 1, and
    // for one degree of freedom p = 1 - 2*atan(|t|)/pi.
    const Correlation c = pearson({0, 1, 2}, {0, 1, 3});
    const double expected_r = 3.0 / std::sqrt(28.0 / 3.0);
    const double expected_t = 3.0 * std::sqrt(3.0);
    const double expected_p = 1.0 - 2.0 * std::atan(expected_t) / std::numbers::pi;
    CHECK(c.r == doctest::Approx(expected_r).epsilon(1e-14));
    CHECK(c.p == doctest::Approx(expected_p).epsilon(1e-12));
    CHECK(c.p == doctest::Approx(quadrature_pvalue(expected_t, 1.0)).epsilon(1e-10));
}

TEST_CASE("four-point fixture matches the closed-form two-dof p") {
    // xs (0,1,2,3), ys (0,1,1,2): r = 3/sqrt(10), t = 3*sqrt(2), dof = 2, and
    // for two degrees of freedom p = 1 - |t|/sqrt(2 + t^2).
    const Correlation c = pearson({0, 1, 2, 3}, {0, 1, 1, 2});
    const double expected_t = 3.0 * std::sqrt(2.0);
    CHECK(c.r == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-14));
    CHECK(c.p ==
          doctest::Approx(1.0 - expected_t / std::sqrt(2.0 + expected_t * expected_t))
              .epsilon(1e-12));
}

TEST_CASE("twenty-point fixtures match the quadrature oracle") {
    const std::vector<double> xs = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
                                    11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    const std::vector<double> wobble = {0.3,  -1.2, 0.8,  2.1,  -0.5, 1.7,  -2.3, 0.9,
                                        -1.8, 2.6,  0.1,  -0.7, 1.4,  -2.9, 2.2,  -0.4,
                                        1.1,  -1.6, 0.6,  -2.1};
    auto check_against_oracle = [](const std::vector<double>& a,
                                   const std::vector<double>& b) {
        const Correlation c = pearson(a, b);
        const double r = oracle_r(a, b);
        REQUIRE(std::fabs(c.r - r) <= 1e-12);
        const double dof = static_cast<double>(a.size() - 2);
        const double t = r * std::sqrt(dof / ((1.0 - r) * (1.0 + r)));
        REQUIRE(std::fabs(c.p - quadrature_pvalue(t, dof)) <= 1e-10);
        REQUIRE(c.p >= 0.0);
        REQUIRE(c.p <= 1.0);
    };

    SUBCASE("strong positive correlation") {
        std::vector<double> ys;
        for (size_t i = 0; i < xs.size(); ++i) ys.push_back(2.0 * xs[i] + wobble[i]);
        check_against_oracle(xs, ys);
    }
    SUBCASE("strong negative correlation") {
        std::vector<double> ys;
        for (size_t i = 0; i < xs.size(); ++i) ys.push_back(30.0 - 1.5 * xs[i] + wobble[i]);
        check_against_oracle(xs, ys);
    }
    SUBCASE("weak correlation") {
        std::vector<double> ys(wobble);
        check_against_oracle(xs, ys);
        CHECK(pearson(xs, ys).p > 0.05);  // wobble is unrelated to the ramp
    }
}

TEST_CASE("pearson is symmetric and affine-invariant") {
    SplitMix64 gen(derive_seed(20210315, "pearson-affine"));
    int rounds = 0;
    while (rounds < 200) {
        const size_t n = 3 + bounded(gen, 38);
        std::vector<double> xs, ys;
        for (size_t i = 0; i < n; ++i) {
            xs.push_back(static_cast<double>(bounded(gen, 1000)) / 10.0 +
                         static_cast<double>(i));
            ys.push_back(static_cast<double>(bounded(gen, 1000)) / 10.0 -
                         static_cast<double>(i % 7));
        }
        Correlation base;
        try {
            base = pearson(xs, ys);
        } catch (const ValidationError&) {
            continue;  // constant draw; roll again
        }
        ++rounds;

        const Correlation swapped = pearson(ys, xs);
        CHECK(swapped.r == base.r);
        CHECK(swapped.p == base.p);

        const double scale = 0.5 + static_cast<double>(bounded(gen, 100)) / 25.0;
        const double shift = static_cast<double>(bounded(gen, 200)) - 100.0;
        std::vector<double> transformed;
        for (double v : xs) transformed.push_back(scale * v + shift);
        const Correlation affine = pearson(transformed, ys);
        CHECK(affine.r == doctest::Approx(base.r).epsilon(1e-9));
        CHECK(affine.p == doctest::Approx(base.p).epsilon(1e-9));

        std::vector<double> flipped;
        for (double v : xs) flipped.push_back(-scale * v + shift);
        const Correlation negated = pearson(flipped, ys);
        CHECK(negated.r == doctest::Approx(-base.r).epsilon(1e-9));
        CHECK(negated.p == doctest::Approx(base.p).epsilon(1e-9));

        CHECK(std::fabs(base.r) <= 1.0);
    }
}

TEST_CASE("pearson input validation") {
    CHECK(tfmn_test::contains(
        tfmn_test::thrown_message([] { pearson({1, 2, 3}, {1, 2}); }),
        "series lengths differ"));
    CHECK(tfmn_test::contains(
        tfmn_test::thrown_message([] { pearson({1, 2}, {3, 4}); }),
        "at least 3 pairs"));
    CHECK(tfmn_test::contains(
        tfmn_test::thrown_message([] { pearson({5, 5, 5}, {1, 2, 3}); }),
        "constant series"));
    CHECK(tfmn_test::contains(
        tfmn_test::thrown_message([] { pearson({1, 2, 3}, {4, 4, 4}); }),
        "constant series"));
}

TEST_CASE("incomplete beta identities and quadrature") {
    CHECK(incomplete_beta(2.5, 0.5, 0.0) == 0.0);
    CHECK(incomplete_beta(2.5, 0.5, 1.0) == 1.0);
    CHECK_THROWS_AS((void)incomplete_beta(0.0, 1.0, 0.5), ValidationError);

    SplitMix64 gen(derive_seed(20210315, "beta-symmetry"));
    for (int round = 0; round < 50; ++round) {
        const double a = 0.5 + static_cast<double>(bounded(gen, 80)) / 10.0;
        const double b = 0.5 + static_cast<double>(bounded(gen, 80)) / 10.0;
        const double x = static_cast<double>(1 + bounded(gen, 98)) / 100.0;
        // Reflection identity.
        CHECK(incomplete_beta(a, b, x) ==
              doctest::Approx(1.0 - incomplete_beta(b, a, 1.0 - x)).epsilon(1e-12));
    }

    // Direct quadrature of the beta density for parameters >= 1 (integrand
    // bounded on the domain).
    for (const auto& [a, b, x] : std::vector<std::array<double, 3>>{
             {9.0, 1.5, 0.3}, {2.0, 5.0, 0.6}, {1.0, 1.0, 0.25}, {7.5, 3.25, 0.85}}) {
        const double ln_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
        const double a_cap = a;
        const double b_cap = b;
        const double expected = integrate(
            [a_cap, b_cap, ln_b](double u) {
                if (u <= 0.0 || u >= 1.0) return 0.0;
                return std::exp((a_cap - 1.0) * std::log(u) +
                                (b_cap - 1.0) * std::log1p(-u) - ln_b);
            },
            0.0, x);
        CHECK(incomplete_beta(a, b, x) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("permutation p-value agrees with the t-based p") {
    const std::vector<double> xs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    const std::vector<double> strong = {2.1, 3.9, 6.2, 8.1, 9.8, 12.3,
                                        14.1, 15.9, 18.2, 20.1, 21.8, 24.2};
    const std::vector<double> weak = {4.2,  1.1, 5.8, 2.3, 4.9, 0.7,
                                      5.1, 3.3, 1.9, 5.6, 2.7, 4.4};

    const double strong_perm = permutation_pvalue(xs, strong, 2000, 91);
    CHECK(strong_perm <= 0.01);
    CHECK(pearson(xs, strong).p < 1e-6);
    // Add-one smoothing floor.
    CHECK(strong_perm >= 1.0 / 2001.0);

    const double weak_perm = permutation_pvalue(xs, weak, 2000, 91);
    const double weak_t = pearson(xs, weak).p;
    CHECK(weak_t > 0.2);
    CHECK(std::fabs(weak_perm - weak_t) < 0.1);

    // Deterministic for a fixed seed.
    CHECK(permutation_pvalue(xs, weak, 500, 7) == permutation_pvalue(xs, weak, 500, 7));
    CHECK_THROWS_AS((void)permutation_pvalue(xs, weak, 0, 1), ValidationError);
}

// ---------------------------------------------------------------------------
// log_bin_heatmap
// ---------------------------------------------------------------------------

TEST_CASE("point mass lands in one geometric cell") {
    const std::vector<std::pair<int64_t, int64_t>> pairs(7, {10, 10});
    const HeatmapBins bins = log_bin_heatmap(pairs, 2.0);
    // 8 <= 10 < 16, so bin 1+3 on both axes.
    CHECK(bins.x_edges == std::vector<double>{1, 2, 4, 8, 16});
    CHECK(bins.y_edges == std::vector<double>{1, 2, 4, 8, 16});
    REQUIRE(bins.counts.size() == 5);
    REQUIRE(bins.counts[0].size() == 5);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j)
            CHECK(bins.counts[i][j] == ((i == 4 && j == 4) ? 7 : 0));
    CHECK(bins.total() == 7);
}

TEST_CASE("empty input yields an all-zero minimal matrix") {
    const HeatmapBins bins = log_bin_heatmap({}, 2.0);
    CHECK(bins.x_edges == std::vector<double>{1, 2});
    CHECK(bins.counts == std::vector<std::vector<int64_t>>{{0, 0}, {0, 0}});
    CHECK(bins.total() == 0);
}

TEST_CASE("zero counts go to the underflow row and column") {
    const HeatmapBins bins = log_bin_heatmap({{0, 5}, {3, 0}, {0, 0}, {1, 1}}, 2.0);
    CHECK(bins.counts[0][3] == 1);  // (0,5): y in [4,8)
    CHECK(bins.counts[2][0] == 1);  // (3,0): x in [2,4)
    CHECK(bins.counts[0][0] == 1);  // (0,0)
    CHECK(bins.counts[1][1] == 1);  // (1,1): first geometric bin [1,2)
    CHECK(bins.total() == 4);
}

TEST_CASE("geometric boundaries are half-open at exact powers") {
    const HeatmapBins bins =
        log_bin_heatmap({{1, 1}, {2, 3}, {4, 7}, {8, 15}, {16, 16}}, 2.0);
    CHECK(bins.counts[1][1] == 1);  // 1 -> [1,2)
    CHECK(bins.counts[2][2] == 1);  // 2 and 3 -> [2,4)
    CHECK(bins.counts[3][3] == 1);  // 4 and 7 -> [4,8)
    CHECK(bins.counts[4][4] == 1);  // 8 and 15 -> [8,16)
    CHECK(bins.counts[5][5] == 1);  // 16 -> [16,32)
    CHECK(bins.x_edges.back() == 32.0);
}

TEST_CASE("heatmap equals a brute-force binning oracle") {
    SplitMix64 gen(derive_seed(20210315, "heatmap-oracle"));
    for (double base : {2.0, 10.0, 2.5}) {
        std::vector<std::pair<int64_t, int64_t>> pairs;
        for (int i = 0; i < 100; ++i)
            pairs.emplace_back(static_cast<int64_t>(bounded(gen, 1001)),
                               static_cast<int64_t>(bounded(gen, 1001)));
        const HeatmapBins bins = log_bin_heatmap(pairs, base);

        auto oracle_bin = [base](int64_t v) {
            if (v == 0) return 0;
            int bin = 1;
            double lo = 1.0;
            while (lo * base <= static_cast<double>(v)) {
                lo *= base;
                bin += 1;
            }
            return bin;
        };
        std::map<std::pair<int, int>, int64_t> expected;
        for (const auto& [x, y] : pairs) expected[{oracle_bin(x), oracle_bin(y)}] += 1;

        int64_t mass = 0;
        for (size_t i = 0; i < bins.counts.size(); ++i)
            for (size_t j = 0; j < bins.counts[i].size(); ++j) {
                const auto it = expected.find({static_cast<int>(i), static_cast<int>(j)});
                const int64_t want = it == expected.end() ? 0 : it->second;
                REQUIRE(bins.counts[i][j] == want);
                mass += bins.counts[i][j];
            }
        REQUIRE(mass == 100);

        // Edges are the geometric ladder and strictly increase.
        for (size_t i = 0; i < bins.x_edges.size(); ++i) {
            REQUIRE(bins.x_edges[i] == doctest::Approx(std::pow(base, static_cast<double>(i)))
                                           .epsilon(1e-12));
            if (i) REQUIRE(bins.x_edges[i] > bins.x_edges[i - 1]);
        }
    }
}

TEST_CASE("heatmap input validation") {
    CHECK_THROWS_AS((void)log_bin_heatmap({{1, 1}}, 1.0), ValidationError);
    CHECK_THROWS_AS((void)log_bin_heatmap({{-1, 1}}, 2.0), ValidationError);
}

// ---------------------------------------------------------------------------
// prevalence_series
// ---------------------------------------------------------------------------

namespace {

Article quick_article(std::string id, const char* date, OutletClass cls, std::string title,
                      int64_t tw = 0, int64_t fb = 0) {
    Article a;
    a.id = std::move(id);
    a.url = "https://x.example/" + a.id;
    a.outlet_domain = cls == OutletClass::mainstream ? "main.example" : "alt.example";
    a.outlet_class = cls;
    a.date = parse_date(date);
    a.title = std::move(title);
    a.body = "testo generico.";
    a.shares_twitter = tw;
    a.shares_facebook = fb;
    return a;
}

}  // namespace

TEST_CASE("saturated corpus gives constant prevalence one") {
    std::vector<Article> records;
    for (int i = 0; i < 3; ++i)
        records.push_back(quick_article("s" + std::to_string(i),
                                        i < 2 ? "2021-03-01" : "2021-03-02",
                                        OutletClass::mainstream, "Il vaccino oggi"));
    const PrevalenceSeries s =
        prevalence_series(ArticleSet::from_records(std::move(records)), "vaccin",
                          TextField::title, std::nullopt, Language::italian);
    REQUIRE(s.points.size() == 2);
    for (const PrevalencePoint& p : s.points) CHECK(p.fraction == 1.0);
    for (double v : s.smoothed) CHECK(v == 1.0);
    CHECK(s.points[0].total == 2);
    CHECK(s.points[1].total == 1);
}

TEST_CASE("seven of twenty mentioning articles give thirty-five percent") {
    std::vector<Article> records;
    for (int i = 0; i < 20; ++i)
        records.push_back(quick_article("p" + std::to_string(i), "2021-03-18",
                                        OutletClass::alternative,
                                        i < 7 ? "La morte e i numeri" : "Nessuna novita"));
    const PrevalenceSeries s =
        prevalence_series(ArticleSet::from_records(std::move(records)), "mort",
                          TextField::title, OutletClass::alternative, Language::italian);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].mentioning == 7);
    CHECK(s.points[0].total == 20);
    CHECK(s.points[0].fraction == 0.35);
    CHECK(s.smoothed[0] == 0.35);
}

TEST_CASE("per-day hand counts on the small corpus") {
    const ArticleSet corpus = ingest_articles(kFixtures + "corpus_small.jsonl",
                                              CorpusFormat::jsonl);

    SUBCASE("both fields, all outlets") {
        const PrevalenceSeries s = prevalence_series(corpus, "vaccin", TextField::both,
                                                     std::nullopt, Language::italian);
        REQUIRE(s.points.size() == 5);
        const std::vector<std::pair<std::string, double>> expected = {
            {"2021-03-01", 1.0}, {"2021-03-10", 1.0}, {"2021-03-15", 1.0},
            {"2021-03-20", 1.0}, {"2021-03-25", 0.0}};
        for (size_t i = 0; i < expected.size(); ++i) {
            CHECK(format_date(s.points[i].date) == expected[i].first);
            CHECK(s.points[i].fraction == expected[i].second);
            CHECK(s.points[i].total == 1);
        }
        // Window-7 trailing mean: all ones until the final zero joins.
        CHECK(s.smoothed[3] == 1.0);
        CHECK(s.smoothed[4] == 0.8);
    }
    SUBCASE("title field only drops the body-only mentions") {
        const PrevalenceSeries s = prevalence_series(corpus, "vaccin", TextField::title,
                                                     std::nullopt, Language::italian);
        REQUIRE(s.points.size() == 5);
        CHECK(s.points[0].mentioning == 1);  // a1
        CHECK(s.points[1].mentioning == 0);  // a2 mentions in body only
        CHECK(s.points[2].mentioning == 0);  // a3 mentions in body only
        CHECK(s.points[3].mentioning == 1);  // a4
        CHECK(s.points[4].mentioning == 0);
    }
    SUBCASE("outlet filter keeps only that class's days") {
        const PrevalenceSeries alt = prevalence_series(corpus, "vaccin", TextField::both,
                                                       OutletClass::alternative,
                                                       Language::italian);
        REQUIRE(alt.points.size() == 2);
        CHECK(format_date(alt.points[0].date) == "2021-03-10");
        CHECK(alt.points[0].fraction == 1.0);
        CHECK(format_date(alt.points[1].date) == "2021-03-25");
        CHECK(alt.points[1].fraction == 0.0);
    }
}

TEST_CASE("prevalence fractions stay within bounds on random corpora") {
    SplitMix64 gen(derive_seed(20210315, "prevalence-property"));
    const Date base = parse_date("2021-03-01");
    for (int round = 0; round < 30; ++round) {
        std::vector<Article> records;
        const int n = 1 + static_cast<int>(bounded(gen, 40));
        for (int i = 0; i < n; ++i) {
            Article a = quick_article(
                "r" + std::to_string(i), "2021-03-01",
                bounded(gen, 2) ? OutletClass::alternative : OutletClass::mainstream,
                bounded(gen, 2) ? "Il vaccino funziona" : "Altro tema del giorno");
            a.date = Date{base.serial + static_cast<int32_t>(bounded(gen, 10))};
            records.push_back(std::move(a));
        }
        const ArticleSet set = ArticleSet::from_records(std::move(records));
        const PrevalenceSeries s = prevalence_series(set, "vaccin", TextField::title,
                                                     std::nullopt, Language::italian);
        int64_t seen = 0;
        for (size_t i = 0; i < s.points.size(); ++i) {
            const PrevalencePoint& p = s.points[i];
            REQUIRE(p.fraction >= 0.0);
            REQUIRE(p.fraction <= 1.0);
            REQUIRE(p.mentioning <= p.total);
            REQUIRE(p.fraction == static_cast<double>(p.mentioning) /
                                      static_cast<double>(p.total));
            REQUIRE(s.smoothed[i] >= 0.0);
            REQUIRE(s.smoothed[i] <= 1.0);
            if (i) REQUIRE(s.points[i - 1].date < p.date);
            seen += p.total;
        }
        REQUIRE(seen == static_cast<int64_t>(set.size()));
    }
}

// ---------------------------------------------------------------------------
// moving_average
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<Date, double>> dated(const std::vector<double>& values) {
    std::vector<std::pair<Date, double>> out;
    const Date base = parse_date("2021-03-01");
    for (size_t i = 0; i < values.size(); ++i)
        out.emplace_back(Date{base.serial + static_cast<int32_t>(i)}, values[i]);
    return out;
}

}  // namespace

TEST_CASE("window one is the identity") {
    const std::vector<double> values = {3.5, -1.25, 0.0, 7.75};
    CHECK(moving_average(dated(values), 1) == values);
    CHECK(moving_average({}, 3).empty());
}

TEST_CASE("eight-point ramp under window seven") {
    const std::vector<double> out = moving_average(dated({1, 2, 3, 4, 5, 6, 7, 8}), 7);
    const std::vector<double> expected = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0};
    CHECK(out == expected);  // every value is exact in binary
}

TEST_CASE("constant series pass through") {
    SplitMix64 gen(derive_seed(20210315, "constant-average"));
    for (int round = 0; round < 100; ++round) {
        // Dyadic constants: partial sums and means are exact.
        const double c = (static_cast<double>(bounded(gen, 2001)) - 1000.0) / 64.0;
        const size_t n = 1 + bounded(gen, 30);
        const int window = 1 + static_cast<int>(bounded(gen, 10));
        const std::vector<double> out =
            moving_average(dated(std::vector<double>(n, c)), window);
        REQUIRE(out.size() == n);
        for (double v : out) REQUIRE(v == c);
    }
    // Arbitrary constants still round-trip to near machine precision.
    const std::vector<double> out = moving_average(dated(std::vector<double>(9, 0.1)), 7);
    for (double v : out) CHECK(v == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("moving average matches the trailing-window recompute") {
    SplitMix64 gen(derive_seed(20210315, "average-recompute"));
    for (int round = 0; round < 50; ++round) {
        const size_t n = 1 + bounded(gen, 25);
        std::vector<double> values;
        for (size_t i = 0; i < n; ++i)
            values.push_back(static_cast<double>(bounded(gen, 1000)) / 8.0 - 60.0);
        const int window = 1 + static_cast<int>(bounded(gen, 9));
        const std::vector<double> out = moving_average(dated(values), window);
        REQUIRE(out.size() == n);
        for (size_t i = 0; i < n; ++i) {
            const size_t first = i + 1 >= static_cast<size_t>(window)
                                     ? i + 1 - static_cast<size_t>(window)
                                     : 0;
            double sum = 0;
            for (size_t j = first; j <= i; ++j) sum += values[j];
            REQUIRE(out[i] == sum / static_cast<double>(i - first + 1));
        }
    }
}

TEST_CASE("moving average demands strictly increasing dates") {
    std::vector<std::pair<Date, double>> series = dated({1, 2, 3});
    series[2].first = series[1].first;  // duplicate date
    CHECK(tfmn_test::contains(
        tfmn_test::thrown_message([&] { (void)moving_average(series, 2); }),
        "strictly increasing"));
    std::swap(series[0], series[1]);
    CHECK_THROWS_AS((void)moving_average(series, 2), ValidationError);
    CHECK_THROWS_AS((void)moving_average(dated({1, 2}), 0), ValidationError);
}

// ---------------------------------------------------------------------------
// platform_share_summary
// ---------------------------------------------------------------------------

TEST_CASE("appendix share percentages reproduce from a two-article fixture") {
    std::vector<Article> records = {
        quick_article("m1", "2021-03-01", OutletClass::mainstream, "Titolo uno", 5639, 9164),
        quick_article("x1", "2021-03-02", OutletClass::alternative, "Titolo due", 4361, 836),
    };
    const ShareSummary s = platform_share_summary(ArticleSet::from_records(std::move(records)));
    CHECK(s.totals[0][0] == 5639);
    CHECK(s.totals[0][1] == 4361);
    CHECK(s.totals[1][0] == 9164);
    CHECK(s.totals[1][1] == 836);
    CHECK(s.alternative_pct[0] == 43.61);
    CHECK(s.alternative_pct[1] == 8.36);
}

TEST_CASE("an all-mainstream corpus has zero alternative share") {
    std::vector<Article> records = {
        quick_article("m1", "2021-03-01", OutletClass::mainstream, "Titolo", 10, 20),
        quick_article("m2", "2021-03-02", OutletClass::mainstream, "Titolo", 30, 0),
    };
    const ShareSummary s = platform_share_summary(ArticleSet::from_records(std::move(records)));
    CHECK(s.alternative_pct[0] == 0.0);
    CHECK(s.alternative_pct[1] == 0.0);
    CHECK(s.totals[0][1] == 0);

    // A platform with no shares at all reports 0, not NaN.
    std::vector<Article> none = {
        quick_article("z1", "2021-03-01", OutletClass::alternative, "Titolo", 0, 0)};
    const ShareSummary empty_platform =
        platform_share_summary(ArticleSet::from_records(std::move(none)));
    CHECK(empty_platform.alternative_pct[0] == 0.0);
    CHECK(empty_platform.alternative_pct[1] == 0.0);

    CHECK(platform_share_summary(ArticleSet()).weeks.empty());
}

TEST_CASE("weekly rows carry both ISO labels and window-anchored indices") {
    std::vector<Article> records = {
        quick_article("w1", "2021-03-01", OutletClass::mainstream, "Titolo", 10, 100),
        quick_article("w2", "2021-03-20", OutletClass::alternative, "Titolo", 7, 3),
        quick_article("w3", "2021-03-17", OutletClass::mainstream, "Titolo", 5, 40),
    };

    SUBCASE("window defaults to the data span") {
        const ShareSummary s =
            platform_share_summary(ArticleSet::from_records(records));
        REQUIRE(s.weeks.size() == 2);
        CHECK(s.weeks[0].week.year == 2021);
        CHECK(s.weeks[0].week.week == 9);
        CHECK(format_date(s.weeks[0].week_start) == "2021-03-01");
        CHECK(s.weeks[0].week_index == 1);
        CHECK(s.weeks[0].shares[0][0] == 10);
        CHECK(s.weeks[0].shares[1][0] == 100);

        // 03-17 and 03-20 share ISO week 11 (Monday 03-15).
        CHECK(s.weeks[1].week.week == 11);
        CHECK(format_date(s.weeks[1].week_start) == "2021-03-15");
        CHECK(s.weeks[1].week_index == 3);
        CHECK(s.weeks[1].shares[0][0] == 5);
        CHECK(s.weeks[1].shares[0][1] == 7);
        CHECK(s.weeks[1].shares[1][0] == 40);
        CHECK(s.weeks[1].shares[1][1] == 3);
    }
    SUBCASE("an explicit window start re-anchors the index") {
        DateRange window;
        window.start = parse_date("2021-02-22");
        window.end = parse_date("2021-03-31");
        const ShareSummary s =
            platform_share_summary(ArticleSet::from_records(records, window));
        REQUIRE(s.weeks.size() == 2);
        CHECK(s.weeks[0].week_index == 2);  // week of 02-22 is index 1
        CHECK(s.weeks[1].week_index == 4);
        CHECK(s.weeks[0].week.week == 9);   // ISO labels are unchanged
    }
}

TEST_CASE("weekly totals equal a brute-force grouping oracle") {
    SplitMix64 gen(derive_seed(20210315, "weekly-oracle"));
    const Date base = parse_date("2021-02-01");
    std::vector<Article> records;
    for (int i = 0; i < 60; ++i) {
        Article a = quick_article("g" + std::to_string(i), "2021-02-01",
                                  bounded(gen, 2) ? OutletClass::alternative
                                                  : OutletClass::mainstream,
                                  "Titolo", static_cast<int64_t>(bounded(gen, 500)),
                                  static_cast<int64_t>(bounded(gen, 500)));
        a.date = Date{base.serial + static_cast<int32_t>(bounded(gen, 70))};
        records.push_back(std::move(a));
    }
    const ArticleSet set = ArticleSet::from_records(std::move(records));
    const ShareSummary s = platform_share_summary(set);

    std::map<int32_t, std::array<std::array<int64_t, 2>, 2>> expected;
    int64_t grand[2][2] = {};
    for (const Article& a : set) {
        const size_t cls = static_cast<size_t>(a.outlet_class);
        auto& cell = expected[iso_week_start(a.date).serial];
        cell[0][cls] += a.shares_twitter;
        cell[1][cls] += a.shares_facebook;
        grand[0][cls] += a.shares_twitter;
        grand[1][cls] += a.shares_facebook;
    }
    REQUIRE(s.weeks.size() == expected.size());
    const Date anchor = iso_week_start(*set.observation_window().start);
    size_t i = 0;
    for (const auto& [start, cell] : expected) {
        CHECK(s.weeks[i].week_start.serial == start);
        CHECK(s.weeks[i].week_index == (start - anchor.serial) / 7 + 1);
        for (size_t p = 0; p < 2; ++p)
            for (size_t c = 0; c < 2; ++c) CHECK(s.weeks[i].shares[p][c] == cell[p][c]);
        ++i;
    }
    for (size_t p = 0; p < 2; ++p)
        for (size_t c = 0; c < 2; ++c) CHECK(s.totals[p][c] == grand[p][c]);
}

// ---------------------------------------------------------------------------
// exports
// ---------------------------------------------------------------------------

TEST_CASE("correlation JSON round-trips") {
    Correlation c;
    c.r = 0.38;
    c.p = 0.00001;
    c.n = 5745;
    const nlohmann::json j = nlohmann::json::parse(correlation_json(c, "twitter-facebook"));
    CHECK(j.at("label") == "twitter-facebook");
    CHECK(j.at("r") == 0.38);
    CHECK(j.at("p") == 0.00001);
    CHECK(j.at("n") == 5745);
}

TEST_CASE("prevalence CSV prints the small-corpus series verbatim") {
    const ArticleSet corpus = ingest_articles(kFixtures + "corpus_small.jsonl",
                                              CorpusFormat::jsonl);
    const PrevalenceSeries s = prevalence_series(corpus, "vaccin", TextField::both,
                                                 std::nullopt, Language::italian);
    CHECK(prevalence_csv(s) ==
          "date,mentioning,total,fraction,smoothed\n"
          "2021-03-01,1,1,1.000000,1.000000\n"
          "2021-03-10,1,1,1.000000,1.000000\n"
          "2021-03-15,1,1,1.000000,1.000000\n"
          "2021-03-20,1,1,1.000000,1.000000\n"
          "2021-03-25,0,1,0.000000,0.800000\n");
}

TEST_CASE("share CSVs print totals and weekly rows verbatim") {
    std::vector<Article> records = {
        quick_article("m1", "2021-03-01", OutletClass::mainstream, "Titolo", 5639, 9164),
        quick_article("x1", "2021-03-20", OutletClass::alternative, "Titolo", 4361, 836),
    };
    const ShareSummary s = platform_share_summary(ArticleSet::from_records(std::move(records)));
    CHECK(share_summary_csv(s) ==
          "platform,mainstream,alternative,alternative_pct\n"
          "twitter,5639,4361,43.610000\n"
          "facebook,9164,836,8.360000\n");
    CHECK(share_weeks_csv(s) ==
          "iso_year,iso_week,week_start,week_index,"
          "twitter_mainstream,twitter_alternative,facebook_mainstream,facebook_alternative\n"
          "2021,9,2021-03-01,1,5639,0,9164,0\n"
          "2021,11,2021-03-15,3,0,4361,0,836\n");
}

TEST_CASE("heatmap CSV prints edges then the count matrix") {
    CHECK(heatmap_csv(log_bin_heatmap({{0, 0}, {1, 2}, {10, 10}}, 2.0)) ==
          "x_edges,1,2,4,8,16\n"
          "y_edges,1,2,4,8,16\n"
          "1,0,0,0,0\n"
          "0,0,1,0,0\n"
          "0,0,0,0,0\n"
          "0,0,0,0,0\n"
          "0,0,0,0,1\n");
    // Non-integer bases format as fixed-point reals.
    CHECK(heatmap_csv(log_bin_heatmap({{2, 2}}, 2.5)) ==
          "x_edges,1,2.500000\n"
          "y_edges,1,2.500000\n"
          "0,0\n"
          "0,1\n");
}

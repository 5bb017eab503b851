#ifndef TFMN_FRAMES_HPP
#define TFMN_FRAMES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tfmn/corpus.hpp"
#include "tfmn/date.hpp"
#include "tfmn/lexicon.hpp"
#include "tfmn/netbuild.hpp"

namespace tfmn {

// Neighborhood of a target stem: every stem within graph distance <= radius
// over either edge layer, plus the induced subgraph.
struct SemanticFrame {
    std::string target;
    std::set<std::string> neighbors;  // target excluded
    Tfmn subgraph;
    int radius = 1;
};

SemanticFrame extract_frame(const Tfmn& net, const std::string& target, int radius);

struct EmotionCounts {
    std::array<int, kEmotionCount> counts{};
    int covered_words = 0;  // neighbors found in the lexicon (neutral entries count)
};

// Word-level counting: a neighbor tagged {fear, sadness} adds 1 to each.
// The target itself never counts.
EmotionCounts emotion_counts(const SemanticFrame& frame, const EmotionLexicon& lex);

// Seeded Monte-Carlo distribution of per-emotion counts over uniform
// without-replacement draws from the lexicon vocabulary.
//
// Pinned protocol (so an independent oracle reproduces every draw):
//   vocabulary = lexicon stems sorted lexicographically (byte order)
//   sample i  = partial Fisher-Yates over [0, n) driven by
//               SplitMix64(substream_seed(seed, i)), first k slots
//   mu/sigma  = sample mean and population (divide-by-N) std deviation
struct NullModel {
    int sample_count = 0;
    int sample_size = 0;
    uint64_t seed = 0;
    std::array<double, kEmotionCount> mu{};
    std::array<double, kEmotionCount> sigma{};
};

NullModel build_null_model(const EmotionLexicon& lex, int sample_size, int sample_count,
                           uint64_t seed);

struct EmotionProfile {
    std::array<int, kEmotionCount> counts{};
    std::array<double, kEmotionCount> z{};      // meaningful iff z_defined
    std::array<bool, kEmotionCount> z_defined{};
    std::array<bool, kEmotionCount> significant{};
    int covered_words = 0;
};

// z_e = (count_e - mu_e) / sigma_e; sigma_e = 0 leaves z undefined and never
// significant. Errors when counts.covered_words != null.sample_size.
EmotionProfile zscores(const EmotionCounts& counts, const NullModel& null_model);

// A profile together with everything needed to reproduce and export it.
struct ProfileResult {
    std::string target;
    TextField field = TextField::both;
    EmotionProfile profile;
    NullModel null_model;
    SemanticFrame frame;
    size_t article_count = 0;
};

inline constexpr int kDefaultNullSamples = 300;

// Builds the network over the chosen field texts of the mentioning articles,
// takes the radius-1 frame around target, and profiles it against a null
// model sized to the frame's lexicon coverage.
ProfileResult profile_concept(const ArticleSet& articles, const std::string& target,
                              TextField field, const BuildConfig& config,
                              const EmotionLexicon& lex, const SynonymMap& syn,
                              uint64_t seed, int sample_count = kDefaultNullSamples);

enum class Grouping { day, week };

Grouping parse_grouping(std::string_view name);
const char* grouping_name(Grouping g);

struct TemporalPoint {
    Date date;  // day, or Monday of the ISO week
    EmotionProfile profile;
    std::array<double, kEmotionCount> z_rolled{};
    std::array<bool, kEmotionCount> rolled_defined{};
    std::array<bool, kEmotionCount> rolled_significant{};
};

struct TemporalProfile {
    std::string target;
    Grouping grouping = Grouping::day;
    int rolling_window = 1;
    std::vector<TemporalPoint> points;  // groups with >= 1 mentioning article only
    std::array<bool, kEmotionCount> persistent{};
};

// Groups mentioning articles by day/ISO week; groups without mentions (or
// without lexicon coverage) are gaps and never enter the series. The rolled
// z is a trailing mean over up-to-rolling_window defined points; persistence
// = rolled |z| >= the significance threshold on >= 50% of defined points.
// Each group's null model runs on substream_seed(seed, group day serial).
TemporalProfile temporal_profiles(const ArticleSet& articles, const std::string& target,
                                  TextField field, Grouping grouping, int rolling_window,
                                  const BuildConfig& config, const EmotionLexicon& lex,
                                  const SynonymMap& syn, uint64_t seed,
                                  int sample_count = kDefaultNullSamples);

// JSON: per-emotion {count, mu, sigma, z, significant} + metadata
// {target, field, seed, sample_count, sample_size}.
std::string profile_json(const ProfileResult& result, uint64_t seed);

// CSV: date,emotion,z_raw,z_rolled,significant (undefined z prints empty).
std::string temporal_csv(const TemporalProfile& t);

}  // namespace tfmn

#endif

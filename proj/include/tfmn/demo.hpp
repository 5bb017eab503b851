#ifndef TFMN_DEMO_HPP
#define TFMN_DEMO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tfmn/corpus.hpp"
#include "tfmn/lexicon.hpp"

namespace tfmn {

// Synthetic corpus generator: builds a labeled article set whose semantic
// frames around "vaccin" are engineered word pools, so the full pipeline has
// a deterministic end-to-end exercise with known-sign emotion profiles.

inline constexpr int kDemoPoolSize = 40;

// Frame word pools derived from the lexicon alone (seed-independent):
//   mainstream  - trust/anticipation carriers with no negative tags, padded
//                 with neutral stems; the resulting profile over-expresses
//                 trust and anticipation and under-expresses disgust.
//   alternative - greedy-balanced so every per-emotion count sits within 2
//                 of the lexicon prevalence expectation; no emotion should
//                 reach significance.
// Only stems that are stemmer fixed points and not stopwords are used, so
// the words survive tokenization verbatim. Throws ValidationError when the
// lexicon cannot satisfy the pool requirements.
struct DemoPools {
    std::vector<std::string> mainstream;
    std::vector<std::string> alternative;
};

DemoPools demo_pools(const EmotionLexicon& lex, Language lang);

struct DemoSpec {
    uint64_t seed = 1;
    int mainstream_articles = 30;   // "vaccin" titles, mainstream outlets
    int alternative_articles = 30;  // "vaccin" titles, alternative outlets
    int event_articles = 24;        // "astrazenec" titles; half per split side
    int background_articles = 16;   // no target mention
    Date window_start{};            // defaults applied when left zero
    Date split{};
    Date window_end{};
    Language language = Language::italian;
};

// Deterministic for a fixed spec: every article's words, date, and share
// counts derive from spec.seed. Titles covering a pool place the target
// within the co-occurrence window of every pool word, so the radius-1 frame
// of "vaccin" per outlet class equals that class's pool exactly.
ArticleSet synthetic_corpus(const EmotionLexicon& lex, const DemoSpec& spec = {});

}  // namespace tfmn

#endif

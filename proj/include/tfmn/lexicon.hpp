#ifndef TFMN_LEXICON_HPP
#define TFMN_LEXICON_HPP

#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfmn/core.hpp"
#include "tfmn/stemmer.hpp"

namespace tfmn {

// Stem -> Plutchik emotion set. A stem may be present with an empty set
// (explicitly neutral entry); it still counts as lexicon vocabulary.
class EmotionLexicon {
public:
    // Stems the surface form, then unions into any existing entry.
    void add_surface(std::string_view word, EmotionSet set, Language lang);

    void add_stem(std::string stem_value, EmotionSet set);

    // Empty set for out-of-vocabulary stems; never errors.
    EmotionSet emotions_of(std::string_view stem_value) const;

    bool contains(std::string_view stem_value) const;

    size_t vocabulary_size() const { return entries_.size(); }

    const std::unordered_map<std::string, EmotionSet>& entries() const { return entries_; }

    // Lexicographic (byte order) — the pinned iteration order for null-model
    // sampling, so re-implementations see the same indexing.
    std::vector<std::string> sorted_vocabulary() const;

private:
    std::unordered_map<std::string, EmotionSet> entries_;
};

// TSV columns: word \t emotion \t flag(0|1). The 8 canonical emotion names
// are honored; "positive"/"negative" sentiment rows are accepted and skipped;
// anything else is an error. Words are stemmed; flag=1 sets union across
// surface forms collapsing to one stem.
EmotionLexicon load_emotion_lexicon(const std::string& path, Language lang);

// Symmetric, irreflexive relation over stems.
class SynonymMap {
public:
    // Stems both words; drops the pair when the stems coincide.
    void add(std::string_view a, std::string_view b, Language lang);

    void add_stems(std::string a, std::string b);

    bool related(std::string_view a, std::string_view b) const;

    // Both directions counted.
    size_t directed_size() const { return 2 * pairs_.size(); }

    // Each unordered pair once, (first < second), sorted.
    const std::set<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

private:
    std::set<std::pair<std::string, std::string>> pairs_;
};

// TSV columns: word \t word.
SynonymMap load_synonyms(const std::string& path, Language lang);

}  // namespace tfmn

#endif

#include "tfmn/lexicon.hpp"

#include <algorithm>

#include "tfmn/csv.hpp"

namespace tfmn {

void EmotionLexicon::add_surface(std::string_view word, EmotionSet set, Language lang) {
    add_stem(stem(word, lang), set);
}

void EmotionLexicon::add_stem(std::string stem_value, EmotionSet set) {
    entries_[std::move(stem_value)] |= set;
}

EmotionSet EmotionLexicon::emotions_of(std::string_view stem_value) const {
    const auto it = entries_.find(std::string(stem_value));
    return it == entries_.end() ? EmotionSet{} : it->second;
}

bool EmotionLexicon::contains(std::string_view stem_value) const {
    return entries_.count(std::string(stem_value)) > 0;
}

std::vector<std::string> EmotionLexicon::sorted_vocabulary() const {
    std::vector<std::string> vocab;
    vocab.reserve(entries_.size());
    for (const auto& [stem_value, set] : entries_) vocab.push_back(stem_value);
    std::sort(vocab.begin(), vocab.end());
    return vocab;
}

namespace {

// Splits into lines, tracking 1-based numbers; skips blank lines.
std::vector<std::pair<int, std::string_view>> tsv_lines(const std::string& text) {
    std::vector<std::pair<int, std::string_view>> lines;
    size_t pos = 0;
    int line = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        ++line;
        std::string_view raw(text.data() + pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        pos = nl + 1;
        if (!raw.empty()) lines.emplace_back(line, raw);
        if (nl == text.size()) break;
    }
    return lines;
}

std::vector<std::string_view> split_tabs(std::string_view raw) {
    std::vector<std::string_view> cols;
    size_t pos = 0;
    while (true) {
        const size_t tab = raw.find('\t', pos);
        if (tab == std::string_view::npos) {
            cols.push_back(raw.substr(pos));
            break;
        }
        cols.push_back(raw.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return cols;
}

}  // namespace

EmotionLexicon load_emotion_lexicon(const std::string& path, Language lang) {
    const std::string text = read_file(path);
    EmotionLexicon lex;
    for (const auto& [line, raw] : tsv_lines(text)) {
        const auto cols = split_tabs(raw);
        if (cols.size() != 3) {
            throw ValidationError(path + ":" + std::to_string(line) +
                                  ": expected 3 tab-separated columns");
        }
        if (cols[0].empty()) {
            throw ValidationError(path + ":" + std::to_string(line) + ": empty word");
        }
        if (cols[2] != "0" && cols[2] != "1") {
            throw ValidationError(path + ":" + std::to_string(line) +
                                  ": flag must be 0 or 1, got \"" + std::string(cols[2]) + "\"");
        }
        if (cols[1] == "positive" || cols[1] == "negative") continue;
        Emotion e;
        try {
            e = parse_emotion(cols[1]);
        } catch (const ValidationError& err) {
            throw ValidationError(path + ":" + std::to_string(line) + ": " + err.what());
        }
        EmotionSet set;
        if (cols[2] == "1") set.add(e);
        lex.add_surface(cols[0], set, lang);
    }
    return lex;
}

void SynonymMap::add(std::string_view a, std::string_view b, Language lang) {
    add_stems(stem(a, lang), stem(b, lang));
}

void SynonymMap::add_stems(std::string a, std::string b) {
    if (a == b) return;
    if (b < a) std::swap(a, b);
    pairs_.emplace(std::move(a), std::move(b));
}

bool SynonymMap::related(std::string_view a, std::string_view b) const {
    if (a == b) return false;
    std::string x(a), y(b);
    if (y < x) std::swap(x, y);
    return pairs_.count({x, y}) > 0;
}

SynonymMap load_synonyms(const std::string& path, Language lang) {
    const std::string text = read_file(path);
    SynonymMap map;
    for (const auto& [line, raw] : tsv_lines(text)) {
        const auto cols = split_tabs(raw);
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
            throw ValidationError(path + ":" + std::to_string(line) +
                                  ": expected 2 tab-separated words");
        }
        map.add(cols[0], cols[1], lang);
    }
    return map;
}

}  // namespace tfmn

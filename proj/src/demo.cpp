#include "tfmn/demo.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "tfmn/rng.hpp"
#include "tfmn/stemmer.hpp"

namespace tfmn {

namespace {

constexpr std::array<Emotion, 4> kNegative = {Emotion::fear, Emotion::sadness,
                                              Emotion::disgust, Emotion::anger};

bool has_negative(EmotionSet set) {
    for (Emotion e : kNegative)
        if (set.contains(e)) return true;
    return false;
}

// Pool words must survive tokenization verbatim and must never trip the
// prefix-based target mention check.
bool usable_stem(const std::string& s, Language lang) {
    if (stem(s, lang) != s || is_stopword(s, lang)) return false;
    return !s.starts_with("vaccin") && !s.starts_with("astrazenec");
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (const std::string& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

}  // namespace

DemoPools demo_pools(const EmotionLexicon& lex, Language lang) {
    const std::vector<std::string> vocab = lex.sorted_vocabulary();
    const double n = static_cast<double>(vocab.size());
    if (vocab.empty()) throw ValidationError("demo pools need a non-empty lexicon");

    DemoPools pools;
    std::set<std::string> taken;
    std::array<int, kEmotionCount> counts{};
    auto count_of = [&counts](Emotion e) { return counts[static_cast<size_t>(e)]; };
    auto add = [&](std::vector<std::string>& pool, const std::string& s) {
        pool.push_back(s);
        taken.insert(s);
        for (Emotion e : kEmotions)
            if (lex.emotions_of(s).contains(e)) ++counts[static_cast<size_t>(e)];
    };

    // Mainstream: trust carriers, then anticipation carriers, never a stem
    // with a negative tag; neutral padding to size.
    for (const std::string& s : vocab) {
        if (count_of(Emotion::trust) >= 17) break;
        const EmotionSet tags = lex.emotions_of(s);
        if (usable_stem(s, lang) && tags.contains(Emotion::trust) && !has_negative(tags))
            add(pools.mainstream, s);
    }
    for (const std::string& s : vocab) {
        if (count_of(Emotion::anticipation) >= 15) break;
        const EmotionSet tags = lex.emotions_of(s);
        if (usable_stem(s, lang) && !taken.count(s) && tags.contains(Emotion::anticipation) &&
            !has_negative(tags))
            add(pools.mainstream, s);
    }
    for (const std::string& s : vocab) {
        if (pools.mainstream.size() >= kDemoPoolSize) break;
        if (usable_stem(s, lang) && !taken.count(s) && lex.emotions_of(s).empty())
            add(pools.mainstream, s);
    }
    if (pools.mainstream.size() != kDemoPoolSize)
        throw ValidationError("lexicon too small for the mainstream demo pool");
    if (count_of(Emotion::trust) < 15 || count_of(Emotion::anticipation) < 13)
        throw ValidationError("lexicon lacks enough positive carriers for the demo pool");
    for (Emotion e : kNegative)
        if (count_of(e) != 0)
            throw ValidationError("mainstream demo pool picked a negative-tagged stem");

    // Alternative: greedy fill toward the lexicon prevalence expectation.
    std::array<int64_t, kEmotionCount> total{};
    for (const std::string& s : vocab)
        for (Emotion e : kEmotions)
            if (lex.emotions_of(s).contains(e)) ++total[static_cast<size_t>(e)];
    std::array<int, kEmotionCount> target{};
    for (size_t i = 0; i < kEmotionCount; ++i)
        target[i] = static_cast<int>(
            std::llround(kDemoPoolSize * static_cast<double>(total[i]) / n));

    counts = {};
    taken.clear();
    for (const std::string& s : vocab) {
        const EmotionSet tags = lex.emotions_of(s);
        if (!usable_stem(s, lang) || tags.empty()) continue;
        if (pools.alternative.size() >= kDemoPoolSize) break;
        bool room = true;
        for (Emotion e : kEmotions)
            if (tags.contains(e) && count_of(e) >= target[static_cast<size_t>(e)])
                room = false;
        if (room) add(pools.alternative, s);
    }
    for (const std::string& s : vocab) {
        if (pools.alternative.size() >= kDemoPoolSize) break;
        if (usable_stem(s, lang) && !taken.count(s) && lex.emotions_of(s).empty())
            add(pools.alternative, s);
    }
    if (pools.alternative.size() != kDemoPoolSize)
        throw ValidationError("lexicon too small for the alternative demo pool");
    for (size_t i = 0; i < kEmotionCount; ++i) {
        const double expected = kDemoPoolSize * static_cast<double>(total[i]) / n;
        if (std::fabs(static_cast<double>(counts[i]) - expected) > 2.0)
            throw ValidationError("alternative demo pool is unbalanced for \"" +
                                  std::string(emotion_name(kEmotions[i])) + "\"");
    }
    return pools;
}

namespace {

struct BlockSpec {
    std::string prefix;
    OutletClass cls = OutletClass::mainstream;
    std::string target;  // empty: background article without any target
    const std::vector<std::string>* pool = nullptr;
    int count = 0;
    Date lo, hi;
};

void make_block(std::vector<Article>& out, const BlockSpec& block, SplitMix64& g) {
    // Coverage first: a shuffled copy of the pool chunked into triples, so
    // the union of this block's titles is exactly the pool.
    std::vector<std::string> order = *block.pool;
    shuffle(order, g);
    const size_t chunks = block.target.empty() ? 0 : (order.size() + 2) / 3;

    for (int i = 0; i < block.count; ++i) {
        std::vector<std::string> words;
        if (static_cast<size_t>(i) < chunks) {
            for (size_t j = 3 * static_cast<size_t>(i);
                 j < std::min(order.size(), 3 * static_cast<size_t>(i) + 3); ++j)
                words.push_back(order[j]);
        } else {
            for (uint32_t idx :
                 sample_distinct(g, static_cast<uint32_t>(block.pool->size()), 3))
                words.push_back((*block.pool)[idx]);
        }

        Article a;
        char id[16];
        std::snprintf(id, sizeof id, "%s%03d", block.prefix.c_str(), i + 1);
        a.id = id;
        a.url = "https://demo.example/" + a.id;
        a.outlet_domain = block.cls == OutletClass::mainstream ? "mainstream.example"
                                                               : "alternative.example";
        a.outlet_class = block.cls;
        a.date = Date{block.lo.serial +
                      static_cast<int32_t>(bounded(
                          g, static_cast<uint64_t>(block.hi.serial - block.lo.serial + 1)))};
        if (block.target.empty()) {
            a.title = join_words(words);
        } else {
            a.title = block.target + " " + join_words(words);
        }
        std::vector<std::string> reversed(words.rbegin(), words.rend());
        a.body = join_words(reversed) + (block.target.empty() ? "." : " " + block.target + ".");
        const int64_t base = static_cast<int64_t>(bounded(g, 13));
        a.shares_twitter = base * base * 2 + static_cast<int64_t>(bounded(g, 4));
        a.shares_facebook = base * base * 5 + static_cast<int64_t>(bounded(g, 10));
        out.push_back(std::move(a));
    }
}

}  // namespace

ArticleSet synthetic_corpus(const EmotionLexicon& lex, const DemoSpec& spec) {
    DemoSpec s = spec;
    if (s.window_start.serial == 0) s.window_start = parse_date("2021-01-04");
    if (s.split.serial == 0) s.split = parse_date("2021-03-15");
    if (s.window_end.serial == 0) s.window_end = parse_date("2021-05-30");
    if (!(s.window_start < s.split) || !(s.split <= s.window_end))
        throw ValidationError("demo window must satisfy start < split <= end");

    const DemoPools pools = demo_pools(lex, s.language);
    const size_t coverage = (kDemoPoolSize + 2) / 3;
    if (s.mainstream_articles < static_cast<int>(coverage) ||
        s.alternative_articles < static_cast<int>(coverage))
        throw ValidationError("demo blocks need at least " + std::to_string(coverage) +
                              " articles per outlet class to cover the pools");

    // Event pools: a calm pre-split neighborhood, plus scare stems after.
    for (const char* scare : {"trombos", "minacc", "pericol"})
        if (!lex.contains(scare) || !usable_stem(scare, s.language))
            throw ValidationError(std::string("demo corpus needs lexicon stem \"") + scare +
                                  "\"");
    std::vector<std::string> before_pool(pools.alternative.begin(),
                                         pools.alternative.begin() + 12);
    std::vector<std::string> after_pool = before_pool;
    after_pool.insert(after_pool.end(), {"trombos", "minacc", "pericol"});
    const int before_count = s.event_articles / 2;
    const int after_count = s.event_articles - before_count;
    if (before_count < 4 || after_count < 5)
        throw ValidationError("demo corpus needs at least 10 event articles");

    std::vector<std::string> neutral;
    for (const std::string& v : lex.sorted_vocabulary())
        if (usable_stem(v, s.language) && lex.emotions_of(v).empty()) neutral.push_back(v);
    if (neutral.size() < 3)
        throw ValidationError("demo corpus needs at least 3 neutral lexicon stems");

    SplitMix64 g(s.seed);
    std::vector<Article> records;
    make_block(records,
               {"m", OutletClass::mainstream, "vaccin", &pools.mainstream,
                s.mainstream_articles, s.window_start, s.window_end},
               g);
    make_block(records,
               {"x", OutletClass::alternative, "vaccin", &pools.alternative,
                s.alternative_articles, s.window_start, s.window_end},
               g);
    make_block(records,
               {"a", OutletClass::mainstream, "astrazenec", &before_pool, before_count,
                s.window_start, Date{s.split.serial - 1}},
               g);
    make_block(records,
               {"az", OutletClass::mainstream, "astrazenec", &after_pool, after_count,
                s.split, s.window_end},
               g);
    make_block(records,
               {"b", OutletClass::alternative, "", &neutral, s.background_articles,
                s.window_start, s.window_end},
               g);
    return ArticleSet::from_records(std::move(records),
                                    DateRange{s.window_start, s.window_end});
}

}  // namespace tfmn

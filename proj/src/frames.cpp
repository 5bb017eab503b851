#include "tfmn/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>

#include "tfmn/rng.hpp"
#include "json.hpp"

namespace tfmn {

SemanticFrame extract_frame(const Tfmn& net, const std::string& target, int radius) {
    if (radius < 1) throw ValidationError("frame radius must be >= 1");
    if (!net.has_node(target))
        throw ValidationError("empty frame: \"" + target + "\" is not a node of the network");

    auto adj = net.adjacency(Layer::combined);
    std::map<std::string, int> dist;
    dist[target] = 0;
    std::queue<std::string> q;
    q.push(target);
    while (!q.empty()) {
        std::string u = q.front();
        q.pop();
        int d = dist[u];
        if (d == radius) continue;
        for (const auto& [v, w] : adj[u]) {
            (void)w;
            if (dist.count(v)) continue;
            dist[v] = d + 1;
            q.push(v);
        }
    }

    SemanticFrame frame;
    frame.target = target;
    frame.radius = radius;
    for (const auto& [stem, d] : dist) {
        (void)d;
        if (stem != target) frame.neighbors.insert(stem);
    }

    Tfmn sub(net.config());
    for (const auto& [key, w] : net.edges()) {
        if (!dist.count(key.first) || !dist.count(key.second)) continue;
        sub.bump_edge(key.first, key.second, w.syntactic, w.synonym);
    }
    for (const auto& [stem, set] : sub.nodes()) {
        (void)set;
        sub.set_emotions(stem, net.nodes().at(stem));
    }
    frame.subgraph = std::move(sub);
    return frame;
}

EmotionCounts emotion_counts(const SemanticFrame& frame, const EmotionLexicon& lex) {
    EmotionCounts out;
    for (const auto& stem : frame.neighbors) {
        if (!lex.contains(stem)) continue;
        out.covered_words += 1;
        EmotionSet set = lex.emotions_of(stem);
        for (Emotion e : kEmotions)
            if (set.contains(e)) out.counts[static_cast<size_t>(e)] += 1;
    }
    return out;
}

NullModel build_null_model(const EmotionLexicon& lex, int sample_size, int sample_count,
                           uint64_t seed) {
    if (sample_size < 1) throw ValidationError("null model sample_size must be >= 1");
    if (sample_count < 2) throw ValidationError("null model sample_count must be >= 2");
    std::vector<std::string> vocab = lex.sorted_vocabulary();
    if (static_cast<size_t>(sample_size) > vocab.size())
        throw ValidationError("null model sample_size " + std::to_string(sample_size) +
                              " exceeds vocabulary size " + std::to_string(vocab.size()));

    std::vector<EmotionSet> sets(vocab.size());
    for (size_t i = 0; i < vocab.size(); ++i) sets[i] = lex.emotions_of(vocab[i]);

    std::array<int64_t, kEmotionCount> sum{};
    std::array<int64_t, kEmotionCount> sumsq{};
    for (int i = 0; i < sample_count; ++i) {
        SplitMix64 g(substream_seed(seed, static_cast<uint64_t>(i)));
        const std::vector<uint32_t> idx =
            sample_distinct(g, static_cast<uint32_t>(vocab.size()),
                            static_cast<uint32_t>(sample_size));
        std::array<int64_t, kEmotionCount> c{};
        for (uint32_t j : idx)
            for (Emotion e : kEmotions)
                if (sets[j].contains(e)) c[static_cast<size_t>(e)] += 1;
        for (size_t e = 0; e < kEmotionCount; ++e) {
            sum[e] += c[e];
            sumsq[e] += c[e] * c[e];
        }
    }

    NullModel null_model;
    null_model.sample_count = sample_count;
    null_model.sample_size = sample_size;
    null_model.seed = seed;
    double n = static_cast<double>(sample_count);
    for (size_t e = 0; e < kEmotionCount; ++e) {
        double mu = static_cast<double>(sum[e]) / n;
        double var = static_cast<double>(sumsq[e]) / n - mu * mu;
        if (var < 0) var = 0;  // guards rounding when all samples agree
        null_model.mu[e] = mu;
        null_model.sigma[e] = std::sqrt(var);
    }
    return null_model;
}

EmotionProfile zscores(const EmotionCounts& counts, const NullModel& null_model) {
    if (counts.covered_words != null_model.sample_size)
        throw ValidationError("null model sample_size " +
                              std::to_string(null_model.sample_size) +
                              " does not match covered word count " +
                              std::to_string(counts.covered_words));
    EmotionProfile p;
    p.counts = counts.counts;
    p.covered_words = counts.covered_words;
    for (size_t e = 0; e < kEmotionCount; ++e) {
        if (null_model.sigma[e] > 0) {
            p.z[e] = (static_cast<double>(counts.counts[e]) - null_model.mu[e]) /
                     null_model.sigma[e];
            p.z_defined[e] = true;
            p.significant[e] = std::abs(p.z[e]) >= kSignificanceZ;
        }
    }
    return p;
}

namespace {

// One parsed document per non-empty field text of each article.
std::vector<ParsedDocument> parse_field_texts(const std::vector<Article>& articles,
                                              TextField field, const BuildConfig& config) {
    if (config.mode != BuildMode::cooccurrence)
        throw ValidationError("profiles over raw article text require cooccurrence mode");
    std::vector<ParsedDocument> docs;
    for (const Article& a : articles) {
        if (field == TextField::title || field == TextField::both)
            docs.push_back(cooccurrence_parse(a.title, config));
        if (field == TextField::body || field == TextField::both)
            docs.push_back(cooccurrence_parse(a.body, config));
    }
    return docs;
}

std::vector<Article> mentioning_articles(const std::vector<Article>& articles,
                                         const std::string& target, TextField field,
                                         Language language) {
    std::vector<Article> out;
    for (const Article& a : articles)
        if (article_mentions(a, target, field, language)) out.push_back(a);
    return out;
}

struct FrameOutcome {
    SemanticFrame frame;
    EmotionCounts counts;
};

// Builds the network for one article group and measures the radius-1 frame.
// Returns nothing when the frame is empty (no target node / no coverage).
std::optional<FrameOutcome> measure_group(const std::vector<Article>& group,
                                          const std::string& target, TextField field,
                                          const BuildConfig& config, const EmotionLexicon& lex,
                                          const SynonymMap& syn) {
    std::vector<ParsedDocument> docs = parse_field_texts(group, field, config);
    size_t tokens = 0;
    for (const auto& d : docs) tokens += d.token_count();
    if (tokens == 0) return std::nullopt;
    Tfmn net = add_synonym_layer(build_tfmn(docs, config, &lex), syn);
    if (!net.has_node(target)) return std::nullopt;
    FrameOutcome out;
    out.frame = extract_frame(net, target, 1);
    out.counts = emotion_counts(out.frame, lex);
    if (out.counts.covered_words == 0) return std::nullopt;
    return out;
}

}  // namespace

ProfileResult profile_concept(const ArticleSet& articles, const std::string& target,
                              TextField field, const BuildConfig& config,
                              const EmotionLexicon& lex, const SynonymMap& syn,
                              uint64_t seed, int sample_count) {
    std::vector<Article> mentions =
        mentioning_articles(articles.articles(), target, field, config.language);
    if (mentions.empty())
        throw ValidationError("empty frame: no article mentions \"" + target + "\"");
    std::optional<FrameOutcome> outcome =
        measure_group(mentions, target, field, config, lex, syn);
    if (!outcome)
        throw ValidationError("empty frame: \"" + target +
                              "\" has no lexicon-covered neighborhood");

    ProfileResult result;
    result.target = target;
    result.field = field;
    result.frame = std::move(outcome->frame);
    result.article_count = mentions.size();
    result.null_model = build_null_model(lex, outcome->counts.covered_words, sample_count, seed);
    result.profile = zscores(outcome->counts, result.null_model);
    return result;
}

Grouping parse_grouping(std::string_view name) {
    if (name == "day") return Grouping::day;
    if (name == "week") return Grouping::week;
    throw ValidationError("unknown grouping \"" + std::string(name) + "\" (use day|week)");
}

const char* grouping_name(Grouping g) {
    return g == Grouping::day ? "day" : "week";
}

TemporalProfile temporal_profiles(const ArticleSet& articles, const std::string& target,
                                  TextField field, Grouping grouping, int rolling_window,
                                  const BuildConfig& config, const EmotionLexicon& lex,
                                  const SynonymMap& syn, uint64_t seed, int sample_count) {
    if (rolling_window < 1) throw ValidationError("rolling window must be >= 1");
    std::vector<Article> mentions =
        mentioning_articles(articles.articles(), target, field, config.language);
    if (mentions.empty())
        throw ValidationError("empty frame: no article mentions \"" + target + "\"");

    std::map<Date, std::vector<Article>> groups;
    for (const Article& a : mentions) {
        Date key = grouping == Grouping::day ? a.date : iso_week_start(a.date);
        groups[key].push_back(a);
    }

    TemporalProfile out;
    out.target = target;
    out.grouping = grouping;
    out.rolling_window = rolling_window;

    for (const auto& [date, group] : groups) {
        std::optional<FrameOutcome> outcome =
            measure_group(group, target, field, config, lex, syn);
        if (!outcome) continue;  // gap: mentioned but nothing measurable
        uint64_t group_seed =
            substream_seed(seed, static_cast<uint64_t>(static_cast<int64_t>(date.serial)));
        NullModel null_model =
            build_null_model(lex, outcome->counts.covered_words, sample_count, group_seed);
        TemporalPoint point;
        point.date = date;
        point.profile = zscores(outcome->counts, null_model);
        out.points.push_back(std::move(point));
    }

    // Trailing mean over the defined raw z values of the last rolling_window points.
    for (size_t i = 0; i < out.points.size(); ++i) {
        size_t first = i + 1 >= static_cast<size_t>(rolling_window)
                           ? i + 1 - static_cast<size_t>(rolling_window)
                           : 0;
        for (size_t e = 0; e < kEmotionCount; ++e) {
            double sum = 0;
            int n = 0;
            for (size_t j = first; j <= i; ++j) {
                if (!out.points[j].profile.z_defined[e]) continue;
                sum += out.points[j].profile.z[e];
                n += 1;
            }
            if (n > 0) {
                out.points[i].z_rolled[e] = sum / n;
                out.points[i].rolled_defined[e] = true;
                out.points[i].rolled_significant[e] =
                    std::abs(out.points[i].z_rolled[e]) >= kSignificanceZ;
            }
        }
    }

    for (size_t e = 0; e < kEmotionCount; ++e) {
        int defined = 0;
        int hot = 0;
        for (const TemporalPoint& p : out.points) {
            if (!p.rolled_defined[e]) continue;
            defined += 1;
            if (p.rolled_significant[e]) hot += 1;
        }
        out.persistent[e] = defined > 0 && 2 * hot >= defined;
    }
    return out;
}

std::string profile_json(const ProfileResult& result, uint64_t seed) {
    nlohmann::json j;
    j["metadata"] = {
        {"target", result.target},
        {"field", text_field_name(result.field)},
        {"seed", seed},
        {"sample_count", result.null_model.sample_count},
        {"sample_size", result.null_model.sample_size},
        {"covered_words", result.profile.covered_words},
        {"article_count", result.article_count},
    };
    nlohmann::json emotions = nlohmann::json::object();
    for (Emotion e : kEmotions) {
        size_t i = static_cast<size_t>(e);
        nlohmann::json row = {
            {"count", result.profile.counts[i]},
            {"mu", result.null_model.mu[i]},
            {"sigma", result.null_model.sigma[i]},
            {"significant", result.profile.significant[i]},
        };
        if (result.profile.z_defined[i])
            row["z"] = result.profile.z[i];
        else
            row["z"] = nullptr;
        emotions[emotion_name(e)] = row;
    }
    j["emotions"] = emotions;
    return j.dump(2) + "\n";
}

namespace {

std::string format_z(double z, bool defined) {
    if (!defined) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", z);
    return buf;
}

}  // namespace

std::string temporal_csv(const TemporalProfile& t) {
    std::string out = "date,emotion,z_raw,z_rolled,significant\n";
    for (const TemporalPoint& p : t.points) {
        std::string date = format_date(p.date);
        for (Emotion e : kEmotions) {
            size_t i = static_cast<size_t>(e);
            out += date;
            out += ',';
            out += emotion_name(e);
            out += ',';
            out += format_z(p.profile.z[i], p.profile.z_defined[i]);
            out += ',';
            out += format_z(p.z_rolled[i], p.rolled_defined[i]);
            out += ',';
            out += p.rolled_significant[i] ? "true" : "false";
            out += '\n';
        }
    }
    return out;
}

}  // namespace tfmn

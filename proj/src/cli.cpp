#include "tfmn/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfmn/core.hpp"
#include "tfmn/corpus.hpp"
#include "tfmn/csv.hpp"
#include "tfmn/date.hpp"
#include "tfmn/frames.hpp"
#include "tfmn/graphstats.hpp"
#include "tfmn/lexicon.hpp"
#include "tfmn/netbuild.hpp"
#include "tfmn/render.hpp"
#include "tfmn/rng.hpp"
#include "tfmn/stats.hpp"
#include "tfmn/stemmer.hpp"

namespace tfmn::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
    std::string corpus;
    std::string lexicon;
    std::string synonyms;
    std::string conllu;
    std::string format = "auto";  // corpus input: auto|jsonl|csv
    std::string emit = "jsonl";   // ingest output: jsonl|csv
    std::string mode = "cooccurrence";
    int window = 4;
    int max_tree_distance = 3;
    std::string language = "italian";
    std::string field = "both";
    std::string outlet;  // empty = no restriction
    std::string from;
    std::string to;
    std::string split;
    std::vector<std::string> targets;
    std::string target;  // single-target override
    uint64_t seed = 1;
    std::string out = "out";
    int radius = 1;
    std::string grouping = "week";
    int rolling = 4;
    int smooth = 7;
    int samples = kDefaultNullSamples;
    double heat_base = 10.0;
    std::string layer = "combined";
};

struct RunState {
    Options o;
    std::vector<std::string> targets;  // effective (--target wins over --targets)
    Language lang = Language::italian;
    BuildConfig build;
    TextField field = TextField::both;
    std::optional<OutletClass> outlet;
    std::optional<Date> from;
    std::optional<Date> to;
    std::optional<Date> split;
    Grouping grouping = Grouping::week;
    Layer layer = Layer::combined;
    std::string hash;  // 16 hex digits over the canonical effective config
    fs::path out;
    EmotionLexicon lex;
    SynonymMap syn;
    int files = 0;
    std::vector<std::string> skipped;
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Fixed-order key=value serialization of every content-affecting setting.
// The output directory and the config file path are deliberately excluded:
// identical settings hash identically wherever the results land.
std::string canonical_config(const Options& o, const std::vector<std::string>& targets) {
    char heat[40];
    std::snprintf(heat, sizeof heat, "%.17g", o.heat_base);
    std::string c;
    auto kv = [&c](const char* k, const std::string& v) {
        c += k;
        c += '=';
        c += v;
        c += '\n';
    };
    kv("corpus", o.corpus);
    kv("lexicon", o.lexicon);
    kv("synonyms", o.synonyms);
    kv("conllu", o.conllu);
    kv("format", o.format);
    kv("emit", o.emit);
    kv("mode", o.mode);
    kv("window", std::to_string(o.window));
    kv("max_tree_distance", std::to_string(o.max_tree_distance));
    kv("language", o.language);
    kv("field", o.field);
    kv("outlet", o.outlet);
    kv("from", o.from);
    kv("to", o.to);
    kv("split", o.split);
    kv("targets", join(targets, ","));
    kv("seed", std::to_string(o.seed));
    kv("radius", std::to_string(o.radius));
    kv("grouping", o.grouping);
    kv("rolling", std::to_string(o.rolling));
    kv("smooth", std::to_string(o.smooth));
    kv("samples", std::to_string(o.samples));
    kv("heat_base", heat);
    kv("layer", o.layer);
    return c;
}

std::string hex16(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void require_path(const std::string& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string(what) + " path is required");
    if (!fs::exists(path))
        throw ValidationError(std::string(what) + " file not found: " + path);
}

// ---- output helpers --------------------------------------------------------

std::string metadata_comment(const RunState& s) {
    return "# config_hash=" + s.hash + " seed=" + std::to_string(s.o.seed) + "\n";
}

void emit_file(RunState& s, const std::string& name, const std::string& content) {
    fs::create_directories(s.out);
    std::string prefix;
    if (name.ends_with(".svg"))
        prefix = "<!-- config_hash=" + s.hash + " seed=" + std::to_string(s.o.seed) + " -->\n";
    else if (!name.ends_with(".json"))
        prefix = metadata_comment(s);  // JSON embeds fields instead of a comment
    write_file((s.out / name).string(), prefix + content);
    ++s.files;
}

std::string embed_json(const RunState& s, nlohmann::json j) {
    j["config_hash"] = s.hash;
    j["seed"] = s.o.seed;
    return j.dump(2) + "\n";
}

// ---- corpus / network helpers ----------------------------------------------

ArticleSet load_corpus(const RunState& s) {
    CorpusFormat fmt;
    if (s.o.format == "csv")
        fmt = CorpusFormat::csv;
    else if (s.o.format == "jsonl")
        fmt = CorpusFormat::jsonl;
    else if (s.o.format == "auto")
        fmt = s.o.corpus.ends_with(".csv") ? CorpusFormat::csv : CorpusFormat::jsonl;
    else
        throw ValidationError("unknown corpus format \"" + s.o.format + "\" (auto|jsonl|csv)");
    ArticleSet set = ingest_articles(s.o.corpus, fmt);
    if (s.from || s.to) {
        ArticleFilter f;
        f.dates = DateRange{s.from, s.to};
        f.language = s.lang;
        set = filter_articles(set, f);
    }
    return set;
}

ArticleSet class_subset(const RunState& s, const ArticleSet& base,
                        std::optional<OutletClass> outlet) {
    if (!outlet) return base;
    ArticleFilter f;
    f.outlet = outlet;
    f.language = s.lang;
    return filter_articles(base, f);
}

ArticleSet working_set(const RunState& s) { return class_subset(s, load_corpus(s), s.outlet); }

Tfmn article_network(const RunState& s, const ArticleSet& set) {
    std::vector<ParsedDocument> docs;
    for (const Article& a : set) {
        if (s.field == TextField::title || s.field == TextField::both)
            docs.push_back(cooccurrence_parse(a.title, s.build));
        if (s.field == TextField::body || s.field == TextField::both)
            docs.push_back(cooccurrence_parse(a.body, s.build));
    }
    Tfmn net = build_tfmn(docs, s.build, &s.lex);
    return add_synonym_layer(std::move(net), s.syn);
}

nlohmann::json frame_json(const SemanticFrame& frame) {
    nlohmann::json j;
    j["target"] = frame.target;
    j["radius"] = frame.radius;
    j["neighbors"] = frame.neighbors;
    j["subgraph"] = nlohmann::json::parse(to_json(frame.subgraph));
    return j;
}

// The outlet classes a per-class section iterates: the requested one, or both.
std::vector<OutletClass> profile_classes(const RunState& s) {
    if (s.outlet) return {*s.outlet};
    return {OutletClass::mainstream, OutletClass::alternative};
}

// ---- per-section workers (shared between subcommands and pipeline) ----------

struct ProfileRun {
    ProfileResult result;
    uint64_t task_seed = 0;
    std::string cls;     // "all" or outlet class name
    std::string suffix;  // "" or "_<class>"
};

// Profiles `target` over `base` restricted to `outlet` (when given). In
// lenient mode a zero-mention combination is recorded as skipped instead of
// failing the run.
std::optional<ProfileRun> run_profile(RunState& s, const ArticleSet& base,
                                      const std::string& target,
                                      std::optional<OutletClass> outlet, bool lenient) {
    ProfileRun pr;
    std::optional<OutletClass> effective = outlet ? outlet : s.outlet;
    pr.cls = effective ? outlet_class_name(*effective) : "all";
    pr.suffix = effective ? "_" + pr.cls : "";
    pr.task_seed =
        derive_seed(s.o.seed, "profile:" + target + ":" + pr.cls + ":" + s.o.field);
    ArticleSet set = class_subset(s, base, outlet);
    try {
        pr.result = profile_concept(set, target, s.field, s.build, s.lex, s.syn,
                                    pr.task_seed, s.o.samples);
    } catch (const ValidationError&) {
        if (!lenient) throw;
        s.skipped.push_back("profile:" + target + ":" + pr.cls);
        return std::nullopt;
    }
    return pr;
}

std::string wheel_title(const RunState& s, const ProfileRun& pr) {
    return pr.result.target + " (" + pr.cls + ", " + s.o.field + ")";
}

void emit_network_files(RunState& s, const Tfmn& net) {
    emit_file(s, "network.json", embed_json(s, nlohmann::json::parse(to_json(net))));
    emit_file(s, "network_edges.tsv", to_edge_tsv(net));
    emit_file(s, "network_nodes.tsv", to_node_tsv(net));
}

void communities_section(RunState& s, const Tfmn& net, std::vector<std::string>& kv) {
    if (net.nodes().empty())
        throw ValidationError("network is empty: no content tokens in the selected articles");
    Partition part = louvain(net, s.layer, derive_seed(s.o.seed, "communities:" + s.o.layer));
    emit_file(s, "communities.tsv", partition_tsv(part));
    char q[48];
    std::snprintf(q, sizeof q, "modularity=%.6f", modularity(net, part, s.layer));
    kv.push_back("communities=" + std::to_string(part.community_count));
    kv.push_back(q);
}

// Writes frame_<t>.json and the community-colored frame render.
void frame_render_section(RunState& s, const Tfmn& net, const std::string& target,
                          bool write_json, bool write_svg) {
    SemanticFrame frame = extract_frame(net, target, s.o.radius);
    if (write_json) emit_file(s, "frame_" + target + ".json", embed_json(s, frame_json(frame)));
    if (!write_svg) return;
    Partition part = louvain(frame.subgraph, Layer::combined,
                             derive_seed(s.o.seed, "communities:frame:" + target));
    NetworkSpec spec;
    spec.seed = derive_seed(s.o.seed, "layout:" + target);
    spec.title = "frame: " + target;
    emit_file(s, "network_" + target + ".svg",
              render_network(frame.subgraph, target, &part, spec));
}

TemporalProfile timeline_series(RunState& s, const ArticleSet& set, const std::string& target) {
    uint64_t task = derive_seed(s.o.seed, "timeline:" + target + ":" + s.o.field + ":" +
                                              s.o.grouping);
    return temporal_profiles(set, target, s.field, s.grouping, s.o.rolling, s.build, s.lex,
                             s.syn, task, s.o.samples);
}

void emit_timeline_csv(RunState& s, const TemporalProfile& tp, const std::string& target) {
    std::vector<std::string> persistent;
    for (Emotion e : kEmotions)
        if (tp.persistent[static_cast<size_t>(e)])
            persistent.push_back(std::string(emotion_name(e)));
    emit_file(s, "timeline_" + target + ".csv",
              "# persistent=" + join(persistent, ",") + "\n" + temporal_csv(tp));
}

void emit_timeline_svg(RunState& s, const TemporalProfile& tp, const std::string& target) {
    TimeseriesSpec spec;
    spec.title = target + " (by " + s.o.grouping + ")";
    emit_file(s, "timeline_" + target + ".svg", render_timeseries(tp, spec));
}

void prevalence_section(RunState& s, const ArticleSet& base, const std::string& target) {
    std::vector<std::optional<OutletClass>> classes;
    if (s.outlet)
        classes = {s.outlet};
    else
        classes = {OutletClass::mainstream, OutletClass::alternative, std::nullopt};
    for (std::optional<OutletClass> c : classes) {
        std::string cls = c ? outlet_class_name(*c) : "all";
        PrevalenceSeries series =
            prevalence_series(base, target, s.field, c, s.lang, s.o.smooth);
        emit_file(s, "prevalence_" + target + "_" + cls + ".csv", prevalence_csv(series));
    }
}

void diff_section(RunState& s, const ArticleSet& set, bool write_frames, bool lenient,
                  std::vector<std::string>& added_counts) {
    const Date split = *s.split;
    ArticleFilter before_f;
    before_f.dates = DateRange{std::nullopt, Date{split.serial - 1}};
    before_f.language = s.lang;
    ArticleFilter after_f;
    after_f.dates = DateRange{split, std::nullopt};
    after_f.language = s.lang;
    const Tfmn before_net = article_network(s, filter_articles(set, before_f));
    const Tfmn after_net = article_network(s, filter_articles(set, after_f));
    for (const std::string& t : s.targets) {
        try {
            SemanticFrame before = extract_frame(before_net, t, s.o.radius);
            SemanticFrame after = extract_frame(after_net, t, s.o.radius);
            FrameDiff d = frame_diff(before, after);
            nlohmann::json j = nlohmann::json::parse(frame_diff_json(d));
            j["split"] = format_date(split);
            if (write_frames) {
                emit_file(s, "frame_" + t + "_before.json", embed_json(s, frame_json(before)));
                emit_file(s, "frame_" + t + "_after.json", embed_json(s, frame_json(after)));
            }
            emit_file(s, "diff_" + t + ".json", embed_json(s, std::move(j)));
            added_counts.push_back(std::to_string(d.added.size()));
        } catch (const ValidationError&) {
            if (!lenient) throw;
            s.skipped.push_back("diff:" + t);
        }
    }
}

void correlate_section(RunState& s, const ArticleSet& base, bool lenient,
                       std::vector<std::string>& kv) {
    std::vector<std::pair<std::string, const ArticleSet*>> entries;
    ArticleSet mainstream_sub;
    ArticleSet alternative_sub;
    if (s.outlet) {
        entries.emplace_back(outlet_class_name(*s.outlet), &base);
    } else {
        mainstream_sub = class_subset(s, base, OutletClass::mainstream);
        alternative_sub = class_subset(s, base, OutletClass::alternative);
        entries.emplace_back("all", &base);
        entries.emplace_back(outlet_class_name(OutletClass::mainstream), &mainstream_sub);
        entries.emplace_back(outlet_class_name(OutletClass::alternative), &alternative_sub);
    }
    nlohmann::json correlations = nlohmann::json::array();
    bool reported = false;
    for (const auto& [label, sub] : entries) {
        std::vector<double> xs, ys;
        xs.reserve(sub->size());
        ys.reserve(sub->size());
        for (const Article& a : *sub) {
            xs.push_back(static_cast<double>(a.shares_twitter));
            ys.push_back(static_cast<double>(a.shares_facebook));
        }
        try {
            Correlation c = pearson(xs, ys);
            correlations.push_back(nlohmann::json::parse(correlation_json(c, label)));
            if (!reported) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "pairs=%zu", c.n);
                kv.push_back(buf);
                std::snprintf(buf, sizeof buf, "r=%.6f", c.r);
                kv.push_back(buf);
                std::snprintf(buf, sizeof buf, "p=%.6g", c.p);
                kv.push_back(buf);
                reported = true;
            }
        } catch (const ValidationError& e) {
            if (!lenient)
                throw ValidationError("correlation (" + label + "): " + e.what());
            s.skipped.push_back("correlate:" + label);
        }
    }
    nlohmann::json j;
    j["correlations"] = std::move(correlations);
    emit_file(s, "correlation.json", embed_json(s, std::move(j)));

    std::vector<std::pair<int64_t, int64_t>> pairs;
    pairs.reserve(base.size());
    for (const Article& a : base) pairs.emplace_back(a.shares_twitter, a.shares_facebook);
    HeatmapBins bins = log_bin_heatmap(pairs, s.o.heat_base);
    HeatmapSpec heat_spec;
    heat_spec.title = "article shares";
    emit_file(s, "heatmap.csv", heatmap_csv(bins));
    emit_file(s, "heatmap.svg", render_heatmap(bins, heat_spec));

    ShareSummary summary = platform_share_summary(base);
    emit_file(s, "share_summary.csv", share_summary_csv(summary));
    emit_file(s, "share_weeks.csv", share_weeks_csv(summary));
}

// ---- subcommands -------------------------------------------------------------

void cmd_ingest(RunState& s, std::vector<std::string>& kv) {
    ArticleSet set = working_set(s);
    if (s.o.emit == "csv")
        emit_file(s, "corpus.csv", to_csv(set));
    else if (s.o.emit == "jsonl")
        emit_file(s, "corpus.jsonl", to_jsonl(set));
    else
        throw ValidationError("unknown emit format \"" + s.o.emit + "\" (jsonl|csv)");
    kv.push_back("articles=" + std::to_string(set.size()));
    kv.push_back("mainstream=" + std::to_string(set.count_class(OutletClass::mainstream)));
    kv.push_back("alternative=" + std::to_string(set.count_class(OutletClass::alternative)));
    DateRange w = set.observation_window();
    if (w.start && w.end)
        kv.push_back("window=" + format_date(*w.start) + ".." + format_date(*w.end));
}

void cmd_build(RunState& s, std::vector<std::string>& kv) {
    Tfmn net = [&]() -> Tfmn {
        if (!s.o.conllu.empty()) {
            std::vector<ParsedDocument> docs{parse_conllu(s.o.conllu, s.lang)};
            return add_synonym_layer(build_tfmn(docs, s.build, &s.lex), s.syn);
        }
        ArticleSet set = working_set(s);
        kv.push_back("articles=" + std::to_string(set.size()));
        return article_network(s, set);
    }();
    emit_network_files(s, net);
    kv.push_back("nodes=" + std::to_string(net.nodes().size()));
    kv.push_back("edges=" + std::to_string(net.edges().size()));
}

void cmd_frame(RunState& s, std::vector<std::string>& kv) {
    Tfmn net = article_network(s, working_set(s));
    std::vector<std::string> counts;
    for (const std::string& t : s.targets) {
        SemanticFrame frame = extract_frame(net, t, s.o.radius);
        emit_file(s, "frame_" + t + ".json", embed_json(s, frame_json(frame)));
        counts.push_back(std::to_string(frame.neighbors.size()));
    }
    kv.push_back("targets=" + join(s.targets, ","));
    kv.push_back("neighbors=" + join(counts, ","));
}

void cmd_profile(RunState& s, std::vector<std::string>& kv) {
    ArticleSet set = working_set(s);
    std::vector<std::string> significant;
    for (const std::string& t : s.targets) {
        std::optional<ProfileRun> pr = run_profile(s, set, t, std::nullopt, false);
        std::vector<std::string> sig;
        for (Emotion e : kEmotions) {
            size_t i = static_cast<size_t>(e);
            if (!pr->result.profile.significant[i]) continue;
            sig.push_back((pr->result.profile.z[i] > 0 ? "+" : "-") +
                          std::string(emotion_name(e)));
        }
        significant.push_back(sig.empty() ? "none" : join(sig, ";"));
        emit_file(s, "profile_" + t + pr->suffix + ".json",
                  embed_json(s, nlohmann::json::parse(profile_json(pr->result, pr->task_seed))));
    }
    kv.push_back("targets=" + join(s.targets, ","));
    kv.push_back("significant=" + join(significant, ","));
}

void cmd_timeline(RunState& s, std::vector<std::string>& kv) {
    ArticleSet set = working_set(s);
    std::vector<std::string> points;
    for (const std::string& t : s.targets) {
        TemporalProfile tp = timeline_series(s, set, t);
        emit_timeline_csv(s, tp, t);
        emit_timeline_svg(s, tp, t);
        points.push_back(std::to_string(tp.points.size()));
    }
    kv.push_back("targets=" + join(s.targets, ","));
    kv.push_back("points=" + join(points, ","));
}

void cmd_communities(RunState& s, std::vector<std::string>& kv) {
    Tfmn net = article_network(s, working_set(s));
    communities_section(s, net, kv);
}

void cmd_diff(RunState& s, std::vector<std::string>& kv) {
    ArticleSet set = working_set(s);
    std::vector<std::string> added;
    diff_section(s, set, /*write_frames=*/false, /*lenient=*/false, added);
    kv.push_back("targets=" + join(s.targets, ","));
    kv.push_back("added=" + join(added, ","));
}

void cmd_correlate(RunState& s, std::vector<std::string>& kv) {
    correlate_section(s, working_set(s), /*lenient=*/false, kv);
}

void cmd_prevalence(RunState& s, std::vector<std::string>& kv) {
    ArticleSet set = load_corpus(s);
    for (const std::string& t : s.targets) prevalence_section(s, set, t);
    kv.push_back("targets=" + join(s.targets, ","));
}

void cmd_render(RunState& s, std::vector<std::string>& kv) {
    ArticleSet base = load_corpus(s);
    ArticleSet set = class_subset(s, base, s.outlet);
    for (const std::string& t : s.targets)
        for (OutletClass c : profile_classes(s)) {
            std::optional<ProfileRun> pr = run_profile(s, base, t, c, /*lenient=*/true);
            if (!pr) continue;
            WheelSpec spec;
            spec.title = wheel_title(s, *pr);
            emit_file(s, "wheel_" + t + pr->suffix + ".svg",
                      render_wheel(pr->result.profile, spec));
        }
    Tfmn net = article_network(s, set);
    for (const std::string& t : s.targets) {
        try {
            frame_render_section(s, net, t, /*write_json=*/false, /*write_svg=*/true);
        } catch (const ValidationError&) {
            s.skipped.push_back("frame:" + t);
        }
        try {
            emit_timeline_svg(s, timeline_series(s, set, t), t);
        } catch (const ValidationError&) {
            s.skipped.push_back("timeline:" + t);
        }
    }
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (const Article& a : set) pairs.emplace_back(a.shares_twitter, a.shares_facebook);
    HeatmapSpec heat_spec;
    heat_spec.title = "article shares";
    emit_file(s, "heatmap.svg", render_heatmap(log_bin_heatmap(pairs, s.o.heat_base), heat_spec));
    kv.push_back("targets=" + join(s.targets, ","));
}

void cmd_pipeline(RunState& s, std::vector<std::string>& kv) {
    ArticleSet base = load_corpus(s);
    ArticleSet set = class_subset(s, base, s.outlet);
    kv.push_back("articles=" + std::to_string(set.size()));

    Tfmn net = article_network(s, set);
    emit_network_files(s, net);
    if (!net.nodes().empty()) {
        communities_section(s, net, kv);
    } else {
        s.skipped.push_back("communities");
    }

    for (const std::string& t : s.targets) {
        for (OutletClass c : profile_classes(s)) {
            std::optional<ProfileRun> pr = run_profile(s, base, t, c, /*lenient=*/true);
            if (!pr) continue;
            emit_file(s, "profile_" + t + pr->suffix + ".json",
                      embed_json(s, nlohmann::json::parse(profile_json(pr->result,
                                                                       pr->task_seed))));
            WheelSpec spec;
            spec.title = wheel_title(s, *pr);
            emit_file(s, "wheel_" + t + pr->suffix + ".svg",
                      render_wheel(pr->result.profile, spec));
        }
        try {
            frame_render_section(s, net, t, /*write_json=*/true, /*write_svg=*/true);
        } catch (const ValidationError&) {
            s.skipped.push_back("frame:" + t);
        }
        try {
            TemporalProfile tp = timeline_series(s, set, t);
            emit_timeline_csv(s, tp, t);
            emit_timeline_svg(s, tp, t);
        } catch (const ValidationError&) {
            s.skipped.push_back("timeline:" + t);
        }
        prevalence_section(s, set, t);
    }

    if (s.split) {
        std::vector<std::string> added;
        diff_section(s, set, /*write_frames=*/true, /*lenient=*/true, added);
    }
    correlate_section(s, set, /*lenient=*/true, kv);
    kv.push_back("targets=" + join(s.targets, ","));
}

// ---- wiring ------------------------------------------------------------------

RunState prepare(Options o, const std::string& sub, bool mode_explicit) {
    RunState s;
    if (!o.target.empty())
        s.targets = {o.target};
    else
        s.targets = o.targets;

    if (!o.conllu.empty()) {
        if (sub != "build")
            throw ValidationError("--conllu applies to the build subcommand only");
        if (mode_explicit && o.mode != "dependency")
            throw ValidationError("conll-u input requires dependency mode, got \"" + o.mode +
                                  "\"");
        o.mode = "dependency";
    } else if (o.mode == "dependency") {
        throw ValidationError("dependency mode requires --conllu input");
    }

    s.lang = parse_language(o.language);
    s.build.mode = parse_build_mode(o.mode);
    s.build.window = o.window;
    s.build.max_tree_distance = o.max_tree_distance;
    s.build.language = s.lang;
    s.build.validate();
    s.field = parse_text_field(o.field);
    if (!o.outlet.empty()) s.outlet = parse_outlet_class(o.outlet);
    if (!o.from.empty()) s.from = parse_date(o.from);
    if (!o.to.empty()) s.to = parse_date(o.to);
    if (!o.split.empty()) s.split = parse_date(o.split);
    if (s.from && s.to && *s.to < *s.from)
        throw ValidationError("--from " + o.from + " is after --to " + o.to);
    s.grouping = parse_grouping(o.grouping);
    s.layer = parse_layer(o.layer);
    if (o.radius < 1) throw ValidationError("frame radius must be >= 1");
    if (o.samples < 1) throw ValidationError("null-model sample count must be >= 1");
    if (o.rolling < 1) throw ValidationError("rolling window must be >= 1");
    if (o.smooth < 1) throw ValidationError("smoothing window must be >= 1");

    const bool needs_corpus = !(sub == "build" && !o.conllu.empty());
    const bool needs_lexicon = sub == "build" || sub == "frame" || sub == "profile" ||
                               sub == "timeline" || sub == "communities" || sub == "diff" ||
                               sub == "render" || sub == "pipeline";
    const bool needs_targets = sub == "frame" || sub == "profile" || sub == "timeline" ||
                               sub == "diff" || sub == "prevalence" || sub == "render" ||
                               sub == "pipeline";
    if (needs_corpus || !o.corpus.empty()) require_path(o.corpus, "corpus");
    if (needs_lexicon || !o.lexicon.empty()) require_path(o.lexicon, "lexicon");
    if (!o.synonyms.empty()) require_path(o.synonyms, "synonyms");
    if (!o.conllu.empty()) require_path(o.conllu, "conllu");
    if (needs_targets && s.targets.empty())
        throw ValidationError(sub + " requires at least one target (--target or --targets)");
    if (sub == "diff" && !s.split) throw ValidationError("diff requires --split-date");

    s.hash = hex16(fnv1a64(canonical_config(o, s.targets)));
    s.out = fs::path(o.out);
    if (!o.lexicon.empty()) s.lex = load_emotion_lexicon(o.lexicon, s.lang);
    if (!o.synonyms.empty()) s.syn = load_synonyms(o.synonyms, s.lang);
    s.o = std::move(o);
    return s;
}

void print_summary(const std::string& sub, const RunState& s,
                   const std::vector<std::string>& kv) {
    std::string line = sub + " config_hash=" + s.hash + " seed=" + std::to_string(s.o.seed);
    for (const std::string& item : kv) line += " " + item;
    line += " files=" + std::to_string(s.files);
    line += " out=" + s.out.string();
    if (!s.skipped.empty()) line += " skipped=" + join(s.skipped, ",");
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
}

}  // namespace

int run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"emotion framing networks over a news corpus"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags override it")
        ->envname("TFMN_CONFIG");

    app.add_option("--corpus", o.corpus, "article corpus (jsonl or csv)");
    app.add_option("--lexicon", o.lexicon, "emotion lexicon tsv (word<TAB>emotion<TAB>flag)");
    app.add_option("--synonyms", o.synonyms, "synonym pairs tsv");
    app.add_option("--conllu", o.conllu, "dependency-parsed text (conll-u); build only");
    app.add_option("--format", o.format, "corpus input format: auto|jsonl|csv")
        ->capture_default_str();
    app.add_option("--emit", o.emit, "ingest output format: jsonl|csv")->capture_default_str();
    app.add_option("--mode", o.mode, "network mode: cooccurrence|dependency")
        ->capture_default_str();
    app.add_option("--window", o.window, "co-occurrence window in content tokens")
        ->capture_default_str();
    app.add_option("--max-tree-distance", o.max_tree_distance,
                   "dependency-mode tree distance cap")
        ->capture_default_str();
    app.add_option("--language", o.language, "italian|english")->capture_default_str();
    app.add_option("--field", o.field, "article text field: title|body|both")
        ->capture_default_str();
    app.add_option("--outlet", o.outlet, "restrict to one outlet class: mainstream|alternative");
    app.add_option("--from", o.from, "window start date (YYYY-MM-DD, inclusive)");
    app.add_option("--to", o.to, "window end date (YYYY-MM-DD, inclusive)");
    app.add_option("--split-date", o.split,
                   "before/after boundary (YYYY-MM-DD; the after side includes it)");
    app.add_option("--targets", o.targets, "target stems (comma-separated)")->delimiter(',');
    app.add_option("--target", o.target, "single target stem (overrides --targets)");
    app.add_option("--seed", o.seed, "top-level seed; every random task derives from it")
        ->capture_default_str();
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--radius", o.radius, "frame radius in hops")->capture_default_str();
    app.add_option("--grouping", o.grouping, "timeline grouping: day|week")
        ->capture_default_str();
    app.add_option("--rolling", o.rolling, "timeline rolling window in points")
        ->capture_default_str();
    app.add_option("--smooth", o.smooth, "prevalence smoothing window in points")
        ->capture_default_str();
    app.add_option("--samples", o.samples, "null-model sample count")->capture_default_str();
    app.add_option("--heat-base", o.heat_base, "heatmap log-bin base")->capture_default_str();
    app.add_option("--layer", o.layer, "network layer: syntactic|synonym|combined")
        ->capture_default_str();

    const std::pair<const char*, const char*> subs[] = {
        {"ingest", "read, validate, and normalize a corpus"},
        {"build", "build the stem network and write node/edge exports"},
        {"frame", "extract semantic frames around the targets"},
        {"profile", "emotion z-score profile of each target's frame"},
        {"timeline", "temporal emotion profiles per target"},
        {"communities", "Louvain communities and modularity of the network"},
        {"diff", "before/after frame comparison around --split-date"},
        {"correlate", "share-count correlation, heatmap, and platform summaries"},
        {"prevalence", "daily mention fraction per target"},
        {"render", "all figures (wheels, frame networks, timelines, heatmap)"},
        {"pipeline", "full reproduction: build, profiles, diffs, correlation, prevalence"},
    };
    for (const auto& [name, desc] : subs) app.add_subcommand(name, desc)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        RunState s = prepare(std::move(o), sub, app.count("--mode") > 0);
        std::vector<std::string> kv;
        if (sub == "ingest")
            cmd_ingest(s, kv);
        else if (sub == "build")
            cmd_build(s, kv);
        else if (sub == "frame")
            cmd_frame(s, kv);
        else if (sub == "profile")
            cmd_profile(s, kv);
        else if (sub == "timeline")
            cmd_timeline(s, kv);
        else if (sub == "communities")
            cmd_communities(s, kv);
        else if (sub == "diff")
            cmd_diff(s, kv);
        else if (sub == "correlate")
            cmd_correlate(s, kv);
        else if (sub == "prevalence")
            cmd_prevalence(s, kv);
        else if (sub == "render")
            cmd_render(s, kv);
        else
            cmd_pipeline(s, kv);
        print_summary(sub, s, kv);
        return 0;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace tfmn::cli

#include "tfmn/netbuild.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"
#include "tfmn/csv.hpp"
#include "tfmn/textutil.hpp"

namespace tfmn {

using nlohmann::json;

BuildMode parse_build_mode(std::string_view name) {
    if (name == "dependency") return BuildMode::dependency;
    if (name == "cooccurrence") return BuildMode::cooccurrence;
    throw ValidationError("unknown build mode \"" + std::string(name) + "\"");
}

const char* build_mode_name(BuildMode m) {
    return m == BuildMode::dependency ? "dependency" : "cooccurrence";
}

Layer parse_layer(std::string_view name) {
    if (name == "syntactic") return Layer::syntactic;
    if (name == "synonym") return Layer::synonym;
    if (name == "combined") return Layer::combined;
    throw ValidationError("unknown layer \"" + std::string(name) + "\"");
}

const char* layer_name(Layer layer) {
    switch (layer) {
        case Layer::syntactic: return "syntactic";
        case Layer::synonym: return "synonym";
        case Layer::combined: return "combined";
    }
    return "combined";
}

void BuildConfig::validate() const {
    if (max_tree_distance < 1) throw ValidationError("max_tree_distance must be >= 1");
    if (window < 2) throw ValidationError("window must be >= 2");
}

size_t ParsedDocument::token_count() const {
    size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
}

namespace {

bool integer_field(std::string_view s, int& out) {
    if (s.empty()) return false;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
        if (v > 1000000) return false;
    }
    out = v;
    return true;
}

void finish_sentence(std::vector<Token>& sentence, std::vector<std::vector<Token>>& out,
                     const std::string& origin, int line) {
    if (sentence.empty()) return;
    int roots = 0;
    const int n = static_cast<int>(sentence.size());
    for (const Token& t : sentence) {
        if (t.head == 0) ++roots;
        if (t.head < 0 || t.head > n) {
            throw ValidationError(origin + ": sentence ending at line " + std::to_string(line) +
                                  " has a head index out of range");
        }
    }
    if (roots == 0) {
        throw ValidationError(origin + ": sentence ending at line " + std::to_string(line) +
                              " has zero roots");
    }
    if (roots > 1) {
        throw ValidationError(origin + ": sentence ending at line " + std::to_string(line) +
                              " has " + std::to_string(roots) + " roots");
    }
    out.push_back(std::move(sentence));
    sentence.clear();
}

}  // namespace

ParsedDocument parse_conllu_text(const std::string& text, Language lang,
                                 const std::string& origin) {
    ParsedDocument doc;
    doc.mode = BuildMode::dependency;
    std::vector<Token> sentence;
    size_t pos = 0;
    int line = 0;
    int expected_id = 1;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        ++line;
        std::string_view raw(text.data() + pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const bool at_end = nl == text.size();
        pos = nl + 1;

        if (raw.empty()) {
            finish_sentence(sentence, doc.sentences, origin, line);
            expected_id = 1;
            if (at_end) break;
            continue;
        }
        if (raw.front() == '#') {
            if (at_end) break;
            continue;
        }
        std::vector<std::string_view> cols;
        size_t p = 0;
        while (true) {
            const size_t tab = raw.find('\t', p);
            if (tab == std::string_view::npos) {
                cols.push_back(raw.substr(p));
                break;
            }
            cols.push_back(raw.substr(p, tab - p));
            p = tab + 1;
        }
        if (cols.size() != 10) {
            throw ValidationError(origin + ":" + std::to_string(line) + ": expected 10 columns, got " +
                                  std::to_string(cols.size()));
        }
        // Multiword-token ranges (e.g. 3-4) and empty nodes (e.g. 3.1) sit
        // outside the basic dependency tree; skip them.
        if (cols[0].find('-') != std::string_view::npos ||
            cols[0].find('.') != std::string_view::npos) {
            if (at_end) break;
            continue;
        }
        int id = 0;
        if (!integer_field(cols[0], id) || id != expected_id) {
            throw ValidationError(origin + ":" + std::to_string(line) +
                                  ": token id is not the next integer in sequence");
        }
        ++expected_id;
        int head = 0;
        if (!integer_field(cols[6], head)) {
            throw ValidationError(origin + ":" + std::to_string(line) + ": non-integer HEAD \"" +
                                  std::string(cols[6]) + "\"");
        }
        Token t;
        t.surface = std::string(cols[1]);
        const std::string_view lemma = cols[2];
        const std::string_view stem_source =
            (lemma.empty() || lemma == "_") ? cols[1] : lemma;
        t.stem = stem_source.empty() ? std::string() : stem(stem_source, lang);
        t.upos = std::string(cols[3]);
        t.head = head;
        t.deprel = std::string(cols[7]);
        sentence.push_back(std::move(t));
        if (at_end) break;
    }
    finish_sentence(sentence, doc.sentences, origin, line + 1);
    return doc;
}

ParsedDocument parse_conllu(const std::string& path, Language lang) {
    return parse_conllu_text(read_file(path), lang, path);
}

ParsedDocument cooccurrence_parse(std::string_view text, const BuildConfig& config) {
    config.validate();
    if (config.mode != BuildMode::cooccurrence) {
        throw ValidationError("cooccurrence_parse requires a cooccurrence-mode config");
    }
    ParsedDocument doc;
    doc.mode = BuildMode::cooccurrence;
    for (const auto& sentence_tokens : split_sentences(text)) {
        std::vector<Token> sentence;
        for (const std::string& surface : sentence_tokens) {
            if (is_stopword(surface, config.language)) continue;
            Token t;
            t.surface = surface;
            t.stem = stem(surface, config.language);
            t.upos = "X";
            t.head = static_cast<int>(sentence.size());  // chain: previous token, 0 for first
            t.deprel = sentence.empty() ? "root" : "next";
            sentence.push_back(std::move(t));
        }
        if (!sentence.empty()) doc.sentences.push_back(std::move(sentence));
    }
    return doc;
}

bool Tfmn::has_node(std::string_view stem_value) const {
    return nodes_.count(std::string(stem_value)) > 0;
}

void Tfmn::bump_edge(const std::string& a, const std::string& b, int64_t d_syntactic,
                     int64_t d_synonym) {
    if (a == b) throw RuntimeError("self-loop on node \"" + a + "\"");
    if (a.empty() || b.empty()) throw RuntimeError("empty stem in edge");
    if (d_syntactic < 0 || d_synonym < 0 || d_syntactic + d_synonym == 0) {
        throw RuntimeError("edge increment must be positive");
    }
    const EdgeKey key = a < b ? EdgeKey{a, b} : EdgeKey{b, a};
    EdgeWeights& w = edges_[key];
    w.syntactic += d_syntactic;
    w.synonym += d_synonym;
    nodes_.try_emplace(key.first);
    nodes_.try_emplace(key.second);
}

std::vector<std::string> Tfmn::neighbors(std::string_view stem_value, Layer layer) const {
    std::vector<std::string> out;
    for (const auto& [key, w] : edges_) {
        if (w.on_layer(layer) <= 0) continue;
        if (key.first == stem_value) out.push_back(key.second);
        else if (key.second == stem_value) out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Tfmn::degree(std::string_view stem_value, Layer layer) const {
    return static_cast<int>(neighbors(stem_value, layer).size());
}

std::map<std::string, std::map<std::string, int64_t>> Tfmn::adjacency(Layer layer) const {
    std::map<std::string, std::map<std::string, int64_t>> adj;
    for (const auto& [key, w] : edges_) {
        const int64_t weight = w.on_layer(layer);
        if (weight <= 0) continue;
        adj[key.first][key.second] += weight;
        adj[key.second][key.first] += weight;
    }
    return adj;
}

void Tfmn::set_emotions(const std::string& stem_value, EmotionSet set) {
    const auto it = nodes_.find(stem_value);
    if (it != nodes_.end()) it->second = set;
}

namespace {

bool content_token(const Token& t, const BuildConfig& config) {
    if (t.stem.empty()) return false;
    if (config.mode == BuildMode::dependency) {
        return config.pos_whitelist.count(t.upos) > 0;
    }
    return true;  // co-occurrence tokens were filtered at parse time
}

// All-pairs tree distances within one sentence (BFS from each token over the
// undirected head links).
std::vector<std::vector<int>> tree_distances(const std::vector<Token>& sentence) {
    const int n = static_cast<int>(sentence.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        const int head = sentence[i].head;
        if (head > 0) {
            adj[i].push_back(head - 1);
            adj[head - 1].push_back(i);
        }
    }
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::deque<int> queue{s};
        dist[s][s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj[u]) {
                if (dist[s][v] == -1) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

void add_sentence_edges(Tfmn& net, const std::vector<Token>& sentence,
                        const BuildConfig& config) {
    const int n = static_cast<int>(sentence.size());
    std::vector<int> content;
    for (int i = 0; i < n; ++i) {
        if (content_token(sentence[i], config)) content.push_back(i);
    }
    if (content.size() < 2) return;

    if (config.mode == BuildMode::cooccurrence) {
        // The chain makes tree distance equal token distance, so the linear
        // position difference is the distance.
        for (size_t x = 0; x < content.size(); ++x) {
            for (size_t y = x + 1; y < content.size(); ++y) {
                if (content[y] - content[x] >= config.window) break;
                const std::string& a = sentence[content[x]].stem;
                const std::string& b = sentence[content[y]].stem;
                if (a != b) net.bump_edge(a, b, 1, 0);
            }
        }
        return;
    }

    const auto dist = tree_distances(sentence);
    for (size_t x = 0; x < content.size(); ++x) {
        for (size_t y = x + 1; y < content.size(); ++y) {
            const int d = dist[content[x]][content[y]];
            if (d < 0 || d > config.max_tree_distance) continue;
            const std::string& a = sentence[content[x]].stem;
            const std::string& b = sentence[content[y]].stem;
            if (a != b) net.bump_edge(a, b, 1, 0);
        }
    }
}

}  // namespace

Tfmn build_tfmn(const std::vector<ParsedDocument>& docs, const BuildConfig& config,
                const EmotionLexicon* lex) {
    config.validate();
    size_t total = 0;
    for (const ParsedDocument& doc : docs) {
        if (doc.mode != config.mode) {
            throw ValidationError(std::string("document parsed in ") + build_mode_name(doc.mode) +
                                  " mode fed to a " + build_mode_name(config.mode) + " build");
        }
        total += doc.token_count();
    }
    if (total == 0) throw ValidationError("no tokens to build a network from");

    Tfmn net(config);
    for (const ParsedDocument& doc : docs) {
        for (const auto& sentence : doc.sentences) {
            add_sentence_edges(net, sentence, config);
        }
    }
    if (lex != nullptr) annotate_emotions(net, *lex);
    return net;
}

Tfmn add_synonym_layer(Tfmn net, const SynonymMap& syn) {
    for (const auto& [a, b] : syn.pairs()) {
        if (net.has_node(a) && net.has_node(b)) net.bump_edge(a, b, 0, 1);
    }
    return net;
}

void annotate_emotions(Tfmn& net, const EmotionLexicon& lex) {
    for (const auto& [stem_value, set] : net.nodes()) {
        (void)set;
        net.set_emotions(stem_value, lex.emotions_of(stem_value));
    }
}

Tfmn merge_tfmn(const Tfmn& a, const Tfmn& b) {
    if (!(a.config() == b.config())) {
        throw ValidationError("cannot merge networks built with different configs");
    }
    Tfmn out = a;
    for (const auto& [key, w] : b.edges()) {
        out.bump_edge(key.first, key.second, w.syntactic, w.synonym);
    }
    for (const auto& [stem_value, set] : b.nodes()) {
        EmotionSet merged = out.nodes().at(stem_value);
        merged |= set;
        out.set_emotions(stem_value, merged);
    }
    return out;
}

std::string to_edge_tsv(const Tfmn& net) {
    std::string out;
    for (const auto& [key, w] : net.edges()) {
        out += key.first;
        out += '\t';
        out += key.second;
        out += '\t';
        out += std::to_string(w.syntactic);
        out += '\t';
        out += std::to_string(w.synonym);
        out += '\n';
    }
    return out;
}

std::string to_node_tsv(const Tfmn& net) {
    std::string out;
    for (const auto& [stem_value, set] : net.nodes()) {
        out += stem_value;
        out += '\t';
        out += set.to_string();
        out += '\n';
    }
    return out;
}

namespace detail {

json config_json(const BuildConfig& config) {
    json j;
    j["mode"] = build_mode_name(config.mode);
    j["max_tree_distance"] = config.max_tree_distance;
    j["window"] = config.window;
    j["language"] = language_name(config.language);
    j["pos_whitelist"] = config.pos_whitelist;
    return j;
}

}  // namespace detail

std::string to_json(const Tfmn& net) {
    json j;
    j["provenance"] = detail::config_json(net.config());
    json nodes = json::object();
    for (const auto& [stem_value, set] : net.nodes()) {
        nodes[stem_value] = set.to_string();
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto& [key, w] : net.edges()) {
        edges.push_back({key.first, key.second, w.syntactic, w.synonym});
    }
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

}  // namespace tfmn

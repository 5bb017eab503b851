#ifndef TFMN_NETBUILD_HPP
#define TFMN_NETBUILD_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfmn/core.hpp"
#include "tfmn/lexicon.hpp"
#include "tfmn/stemmer.hpp"

namespace tfmn {

enum class BuildMode { dependency, cooccurrence };

BuildMode parse_build_mode(std::string_view name);
const char* build_mode_name(BuildMode m);

enum class Layer { syntactic, synonym, combined };

Layer parse_layer(std::string_view name);
const char* layer_name(Layer layer);

struct BuildConfig {
    BuildMode mode = BuildMode::cooccurrence;
    int max_tree_distance = 3;  // dependency mode
    int window = 4;             // co-occurrence mode
    Language language = Language::italian;  // selects stemmer + stopword list
    std::set<std::string> pos_whitelist = {"NOUN", "PROPN", "VERB", "ADJ", "ADV"};

    void validate() const;
    friend bool operator==(const BuildConfig&, const BuildConfig&) = default;
};

struct Token {
    std::string surface;
    std::string stem;
    std::string upos;
    int head = 0;  // 0 = root, otherwise 1-based index within the sentence
    std::string deprel;
};

struct ParsedDocument {
    std::vector<std::vector<Token>> sentences;
    BuildMode mode = BuildMode::cooccurrence;

    size_t token_count() const;
};

// 10-column CoNLL-U. Comment lines skipped; multiword-token ranges (1-2) and
// empty nodes (1.1) skipped since they are outside the basic tree; LEMMA is
// suffix-stripped for the node stem when present, else FORM is.
ParsedDocument parse_conllu(const std::string& path, Language lang);

ParsedDocument parse_conllu_text(const std::string& text, Language lang,
                                 const std::string& origin = "<string>");

// Sentence split + stopword removal + stemming; survivors form a chain so
// that tree distance equals filtered-token distance.
ParsedDocument cooccurrence_parse(std::string_view text, const BuildConfig& config);

struct EdgeWeights {
    int64_t syntactic = 0;
    int64_t synonym = 0;

    int64_t on_layer(Layer layer) const {
        switch (layer) {
            case Layer::syntactic: return syntactic;
            case Layer::synonym: return synonym;
            case Layer::combined: return syntactic + synonym;
        }
        return 0;
    }
    friend bool operator==(const EdgeWeights&, const EdgeWeights&) = default;
};

// Multi-layer word network. Undirected; edges stored once under (a < b);
// every node is incident to at least one edge.
class Tfmn {
public:
    using EdgeKey = std::pair<std::string, std::string>;

    Tfmn() = default;
    explicit Tfmn(BuildConfig config) : config_(std::move(config)) {}

    const BuildConfig& config() const { return config_; }
    const std::map<EdgeKey, EdgeWeights>& edges() const { return edges_; }
    const std::map<std::string, EmotionSet>& nodes() const { return nodes_; }

    bool has_node(std::string_view stem_value) const;
    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    // Accumulates weight on the canonical edge; rejects self-loops and
    // non-positive increments.
    void bump_edge(const std::string& a, const std::string& b, int64_t d_syntactic,
                   int64_t d_synonym);

    // Distinct neighbors over edges with positive weight on the layer.
    std::vector<std::string> neighbors(std::string_view stem_value, Layer layer) const;
    int degree(std::string_view stem_value, Layer layer) const;

    // Adjacency snapshot for graph algorithms: stem -> (neighbor -> weight).
    std::map<std::string, std::map<std::string, int64_t>> adjacency(Layer layer) const;

    void set_emotions(const std::string& stem_value, EmotionSet set);

    friend bool operator==(const Tfmn& a, const Tfmn& b) {
        return a.config_ == b.config_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    BuildConfig config_;
    std::map<std::string, EmotionSet> nodes_;
    std::map<EdgeKey, EdgeWeights> edges_;
};

// Syntactic layer from parsed documents: per sentence, every pair of content
// tokens within the configured tree distance gains +1. Pass the lexicon to
// label node emotions at build time.
Tfmn build_tfmn(const std::vector<ParsedDocument>& docs, const BuildConfig& config,
                const EmotionLexicon* lex = nullptr);

// weight_synonym += 1 for every synonym pair whose two stems are already
// nodes; never introduces nodes.
Tfmn add_synonym_layer(Tfmn net, const SynonymMap& syn);

void annotate_emotions(Tfmn& net, const EmotionLexicon& lex);

// Node union + per-layer weight sums. Configs must match.
Tfmn merge_tfmn(const Tfmn& a, const Tfmn& b);

std::string to_edge_tsv(const Tfmn& net);
std::string to_node_tsv(const Tfmn& net);
std::string to_json(const Tfmn& net);

}  // namespace tfmn

#endif

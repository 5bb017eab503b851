#include "tfmn/graphstats.hpp"

#include <algorithm>
#include <cmath>

#include "tfmn/rng.hpp"
#include "json.hpp"

namespace tfmn {

namespace {

// Indexed view of one layer. Nodes keep the lexicographic order of their
// stems so index comparisons double as stem-order tie-breaks.
struct LayerView {
    std::vector<std::string> stems;              // index -> stem, sorted
    std::vector<std::vector<std::pair<int, int64_t>>> adj;  // both directions
    int64_t total = 0;                           // 2m: every edge twice

    int size() const { return static_cast<int>(stems.size()); }
};

LayerView layer_view(const Tfmn& net, Layer layer) {
    LayerView v;
    std::map<std::string, int> index;
    for (const auto& [stem, set] : net.nodes()) {
        (void)set;
        index.emplace(stem, v.size());
        v.stems.push_back(stem);
    }
    v.adj.resize(v.stems.size());
    for (const auto& [key, w] : net.edges()) {
        const int64_t weight = w.on_layer(layer);
        if (weight <= 0) continue;
        const int a = index.at(key.first);
        const int b = index.at(key.second);
        v.adj[a].emplace_back(b, weight);
        v.adj[b].emplace_back(a, weight);
        v.total += 2 * weight;
    }
    return v;
}

}  // namespace

Partition singleton_partition(const Tfmn& net) {
    Partition p;
    for (const auto& [stem, set] : net.nodes()) {
        (void)set;
        p.community.emplace(stem, p.community_count);
        p.community_count += 1;
    }
    return p;
}

double modularity(const Tfmn& net, const Partition& partition, Layer layer) {
    for (const auto& [stem, c] : partition.community) {
        if (!net.has_node(stem))
            throw ValidationError("partition names unknown node \"" + stem + "\"");
        if (c < 0 || c >= partition.community_count)
            throw ValidationError("community id out of range for \"" + stem + "\"");
    }
    for (const auto& [stem, set] : net.nodes()) {
        (void)set;
        if (!partition.community.count(stem))
            throw ValidationError("partition misses node \"" + stem + "\"");
    }

    std::vector<double> w_in(static_cast<size_t>(partition.community_count), 0.0);
    std::vector<double> k_sum(static_cast<size_t>(partition.community_count), 0.0);
    int64_t total = 0;  // undirected weight, each edge once
    std::map<std::string, int64_t> strength;
    for (const auto& [key, w] : net.edges()) {
        const int64_t weight = w.on_layer(layer);
        if (weight <= 0) continue;
        total += weight;
        strength[key.first] += weight;
        strength[key.second] += weight;
        if (partition.community.at(key.first) == partition.community.at(key.second))
            w_in[static_cast<size_t>(partition.community.at(key.first))] +=
                static_cast<double>(weight);
    }
    if (total == 0) throw ValidationError("layer has no edges; modularity is undefined");
    for (const auto& [stem, k] : strength)
        k_sum[static_cast<size_t>(partition.community.at(stem))] += static_cast<double>(k);

    const double two_m = 2.0 * static_cast<double>(total);
    double q = 0.0;
    for (int c = 0; c < partition.community_count; ++c) {
        const double frac_k = k_sum[static_cast<size_t>(c)] / two_m;
        q += 2.0 * w_in[static_cast<size_t>(c)] / two_m - frac_k * frac_k;
    }
    return q;
}

namespace {

struct LouvainGraph {
    std::vector<std::vector<std::pair<int, int64_t>>> adj;  // u != v, both directions
    std::vector<int64_t> self;                              // A_uu, intra counted twice
    int64_t total = 0;                                      // 2m

    int size() const { return static_cast<int>(adj.size()); }
    int64_t strength(int u) const {
        int64_t k = self[static_cast<size_t>(u)];
        for (const auto& [v, w] : adj[static_cast<size_t>(u)]) {
            (void)v;
            k += w;
        }
        return k;
    }
};

// One sweep sequence of local moves; returns the node -> community map after
// convergence and whether anything moved at all.
bool local_moves(const LouvainGraph& g, std::vector<int>& comm, SplitMix64& rng) {
    const int n = g.size();
    const double m = static_cast<double>(g.total) / 2.0;
    std::vector<int64_t> k(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) k[static_cast<size_t>(u)] = g.strength(u);
    std::vector<double> sigma_tot(static_cast<size_t>(n), 0.0);
    for (int u = 0; u < n; ++u)
        sigma_tot[static_cast<size_t>(comm[static_cast<size_t>(u)])] +=
            static_cast<double>(k[static_cast<size_t>(u)]);

    std::vector<int> order(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) order[static_cast<size_t>(u)] = u;
    std::vector<double> w_to(static_cast<size_t>(n), 0.0);

    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        shuffle(order, rng);
        for (int u : order) {
            const int c0 = comm[static_cast<size_t>(u)];
            std::vector<int> candidates;
            candidates.push_back(c0);
            for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
                const int c = comm[static_cast<size_t>(v)];
                if (w_to[static_cast<size_t>(c)] == 0.0 && c != c0) candidates.push_back(c);
                w_to[static_cast<size_t>(c)] += static_cast<double>(w);
            }
            const double ku = static_cast<double>(k[static_cast<size_t>(u)]);
            sigma_tot[static_cast<size_t>(c0)] -= ku;

            // score(C)/m is the modularity change of joining C from isolation.
            auto score = [&](int c) {
                return w_to[static_cast<size_t>(c)] -
                       ku * sigma_tot[static_cast<size_t>(c)] / (2.0 * m);
            };
            int best = c0;
            double best_score = score(c0);
            for (int c : candidates) {
                const double s = score(c);
                if (s > best_score + 1e-15 || (s > best_score - 1e-15 && c < best)) {
                    best = c;
                    best_score = s;
                }
            }
            if (best != c0 && (best_score - score(c0)) / m > kLouvainTolerance) {
                comm[static_cast<size_t>(u)] = best;
                any_move = true;
                moved = true;
            } else {
                best = c0;
            }
            sigma_tot[static_cast<size_t>(best)] += ku;
            for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
                (void)w;
                w_to[static_cast<size_t>(comm[static_cast<size_t>(v)])] = 0.0;
            }
            w_to[static_cast<size_t>(c0)] = 0.0;
            w_to[static_cast<size_t>(best)] = 0.0;
        }
    }
    return any_move;
}

// Collapses communities into supernodes. comm is renumbered densely in order
// of each community's smallest member index, and `mapping` gains one level.
LouvainGraph aggregate(const LouvainGraph& g, std::vector<int>& comm) {
    const int n = g.size();
    std::vector<int> dense(static_cast<size_t>(n), -1);
    int next = 0;
    for (int u = 0; u < n; ++u) {
        int& d = dense[static_cast<size_t>(comm[static_cast<size_t>(u)])];
        if (d < 0) d = next++;
        comm[static_cast<size_t>(u)] = d;
    }

    LouvainGraph out;
    out.adj.resize(static_cast<size_t>(next));
    out.self.assign(static_cast<size_t>(next), 0);
    out.total = g.total;
    std::map<std::pair<int, int>, int64_t> inter;
    for (int u = 0; u < n; ++u) {
        const int cu = comm[static_cast<size_t>(u)];
        out.self[static_cast<size_t>(cu)] += g.self[static_cast<size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<size_t>(u)]) {
            const int cv = comm[static_cast<size_t>(v)];
            if (cu == cv)
                out.self[static_cast<size_t>(cu)] += w;  // both directions add up to 2w
            else
                inter[{cu, cv}] += w;
        }
    }
    for (const auto& [key, w] : inter)
        out.adj[static_cast<size_t>(key.first)].emplace_back(key.second, w);
    return out;
}

}  // namespace

Partition louvain(const Tfmn& net, Layer layer, uint64_t seed) {
    LayerView view = layer_view(net, layer);
    const int n = view.size();
    Partition result;
    result.community_count = 0;
    if (n == 0) return result;

    LouvainGraph g;
    g.adj = view.adj;
    g.self.assign(static_cast<size_t>(n), 0);
    g.total = view.total;

    // assign[i] = community of original node i at the current level.
    std::vector<int> assign(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) assign[static_cast<size_t>(u)] = u;

    SplitMix64 rng(seed);
    if (g.total > 0) {
        while (true) {
            std::vector<int> comm(static_cast<size_t>(g.size()));
            for (int u = 0; u < g.size(); ++u) comm[static_cast<size_t>(u)] = u;
            const bool improved = local_moves(g, comm, rng);
            if (!improved) break;
            LouvainGraph next = aggregate(g, comm);
            for (int u = 0; u < n; ++u)
                assign[static_cast<size_t>(u)] =
                    comm[static_cast<size_t>(assign[static_cast<size_t>(u)])];
            if (next.size() == g.size()) break;
            g = std::move(next);
        }
    }

    // Canonical ids: communities ordered by smallest member stem. Node order
    // is already lexicographic, so first-seen order does it.
    std::vector<int> dense(static_cast<size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
        int& d = dense[static_cast<size_t>(assign[static_cast<size_t>(u)])];
        if (d < 0) d = result.community_count++;
        result.community.emplace(view.stems[static_cast<size_t>(u)], d);
    }
    return result;
}

int degree_of(const Tfmn& net, const std::string& stem, Layer layer) {
    return net.degree(stem, layer);
}

FrameDiff frame_diff(const SemanticFrame& before, const SemanticFrame& after) {
    if (before.target != after.target)
        throw ValidationError("frame targets differ: \"" + before.target + "\" vs \"" +
                              after.target + "\"");
    FrameDiff d;
    d.target = before.target;
    std::set_difference(after.neighbors.begin(), after.neighbors.end(),
                        before.neighbors.begin(), before.neighbors.end(),
                        std::inserter(d.added, d.added.end()));
    std::set_difference(before.neighbors.begin(), before.neighbors.end(),
                        after.neighbors.begin(), after.neighbors.end(),
                        std::inserter(d.removed, d.removed.end()));
    d.degree_before = static_cast<int>(before.neighbors.size());
    d.degree_after = static_cast<int>(after.neighbors.size());
    if (d.degree_before > 0)
        d.relative_change = (static_cast<double>(d.degree_after) -
                             static_cast<double>(d.degree_before)) /
                            static_cast<double>(d.degree_before);
    return d;
}

std::string partition_tsv(const Partition& partition) {
    std::string out;
    for (const auto& [stem, c] : partition.community) {
        out += stem;
        out += '\t';
        out += std::to_string(c);
        out += '\n';
    }
    return out;
}

std::string frame_diff_json(const FrameDiff& diff) {
    nlohmann::json j;
    j["target"] = diff.target;
    j["added"] = diff.added;
    j["removed"] = diff.removed;
    j["degree_before"] = diff.degree_before;
    j["degree_after"] = diff.degree_after;
    if (diff.relative_change)
        j["relative_change"] = *diff.relative_change;
    else
        j["relative_change"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace tfmn

#ifndef TFMN_GRAPHSTATS_HPP
#define TFMN_GRAPHSTATS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tfmn/frames.hpp"
#include "tfmn/netbuild.hpp"

namespace tfmn {

// Community ids are dense and contiguous from 0, ordered by each community's
// lexicographically smallest member stem.
struct Partition {
    std::map<std::string, int> community;
    int community_count = 0;
};

Partition singleton_partition(const Tfmn& net);

// Newman modularity on the chosen layer. Errors when the partition misses a
// network node or names one the network lacks. A single community scores
// exactly 0.
double modularity(const Tfmn& net, const Partition& partition, Layer layer);

inline constexpr double kLouvainTolerance = 1e-7;

// Seeded Louvain: local moves in shuffled visit order (each accepted move
// raises Q by more than the tolerance), then graph aggregation, repeated
// until a full level yields no gain. Ties go to the community holding the
// lexicographically smallest stem.
Partition louvain(const Tfmn& net, Layer layer, uint64_t seed);

int degree_of(const Tfmn& net, const std::string& stem, Layer layer);

struct FrameDiff {
    std::string target;
    std::set<std::string> added;    // in after only
    std::set<std::string> removed;  // in before only
    int degree_before = 0;
    int degree_after = 0;
    std::optional<double> relative_change;  // empty when degree_before == 0
};

// Neighbor-set comparison of two frames around the same target.
FrameDiff frame_diff(const SemanticFrame& before, const SemanticFrame& after);

std::string partition_tsv(const Partition& partition);
std::string frame_diff_json(const FrameDiff& diff);

}  // namespace tfmn

#endif

#pragma once

#include <compare>
#include <vector>

#include "rmtlaw/partition.hpp"

namespace rmtlaw::nc {

// Largest k accepted by enumerate_consistent_graphs.
inline constexpr unsigned max_graph_size = 8;

// Closed blocks of a partition on the cycle 1..k (0 identified with k).
// Closed block s is B_s together with the successor l of every l - 1 in B_s;
// element l has multiplicity 2 when l - 1 lies in its own block, else 1.
struct ClosedBlockView {
    Partition partition;
    std::vector<std::vector<unsigned>> closed_blocks;  // ascending elements
    std::vector<unsigned> multiplicity;                // multiplicity[l - 1]

    explicit ClosedBlockView(const Partition& p);

    unsigned multiplicity_of(unsigned element) const { return multiplicity[element - 1]; }
};

struct GraphEdge {
    unsigned u = 0;  // u <= v, 1-based; u == v is a self-loop
    unsigned v = 0;
    unsigned block = 0;  // 0-based canonical block index of the subgraph

    bool operator==(const GraphEdge&) const = default;
    auto operator<=>(const GraphEdge&) const = default;
};

// A degree-2 multigraph on {1..k} together with its decomposition into one
// subgraph per block. Two graphs are equal when their edge multisets and
// block assignments agree.
class ConsistentGraph {
public:
    ConsistentGraph(unsigned k, std::vector<GraphEdge> edges);

    unsigned size() const { return k_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    // Number of connected components; every component is a cycle.
    unsigned component_count() const;

    // Partition of {1..k} whose blocks are the vertex sets of the components.
    Partition component_partition() const;

    // Degree-2, closed-block and multiplicity conditions relative to view.
    bool is_consistent_with(const ClosedBlockView& view) const;

    bool operator==(const ConsistentGraph&) const = default;
    auto operator<=>(const ConsistentGraph&) const = default;

private:
    std::vector<unsigned> component_labels() const;

    unsigned k_;
    std::vector<GraphEdge> edges_;  // sorted by (block, u, v)
};

// Every graph consistent with p: for each block, every perfect matching of
// the closed block's vertex slots (vertex l repeated multiplicity(l) times),
// combined across blocks. Ordered lexicographically; k <= max_graph_size.
std::vector<ConsistentGraph> enumerate_consistent_graphs(const Partition& p);

// The consistent graphs with the largest possible number of components,
// k - #p + 1.
std::vector<ConsistentGraph> max_component_graphs(const Partition& p);

}  // namespace rmtlaw::nc

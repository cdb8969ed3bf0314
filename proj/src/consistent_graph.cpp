#include "rmtlaw/consistent_graph.hpp"

#include <algorithm>
#include <numeric>

#include "rmtlaw/error.hpp"

namespace rmtlaw::nc {

ClosedBlockView::ClosedBlockView(const Partition& p)
    : partition(p), closed_blocks(p.block_count()), multiplicity(p.size(), 1)
{
    const unsigned k = p.size();
    for (unsigned l = 1; l <= k; ++l) {
        unsigned pred = l == 1 ? k : l - 1;
        unsigned s = p.block_of(pred);
        auto& closed = closed_blocks[s];
        closed.push_back(l);
        if (p.block_of(l) == s) {
            multiplicity[l - 1] = 2;
        } else {
            closed_blocks[p.block_of(l)].push_back(l);
        }
    }
    for (auto& closed : closed_blocks) {
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    }
}

ConsistentGraph::ConsistentGraph(unsigned k, std::vector<GraphEdge> edges)
    : k_(k), edges_(std::move(edges))
{
    for (auto& e : edges_) {
        if (e.u == 0 || e.v == 0 || e.u > k_ || e.v > k_) {
            throw DomainError("graph edge endpoint outside {1..k}");
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.block, a.u, a.v) < std::tie(b.block, b.u, b.v);
    });
}

std::vector<unsigned> ConsistentGraph::component_labels() const
{
    std::vector<unsigned> parent(k_ + 1);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](unsigned x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : edges_) {
        unsigned a = find(e.u);
        unsigned b = find(e.v);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<unsigned> labels(k_);
    for (unsigned l = 1; l <= k_; ++l) {
        labels[l - 1] = find(l);
    }
    return labels;
}

unsigned ConsistentGraph::component_count() const
{
    auto labels = component_labels();
    std::sort(labels.begin(), labels.end());
    return static_cast<unsigned>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

Partition ConsistentGraph::component_partition() const
{
    return Partition::from_labels(component_labels());
}

bool ConsistentGraph::is_consistent_with(const ClosedBlockView& view) const
{
    const auto& p = view.partition;
    if (p.size() != k_ || edges_.size() != k_) {
        return false;
    }
    std::vector<unsigned> total(k_ + 1, 0);
    std::vector<std::vector<unsigned>> per_block(p.block_count(), std::vector<unsigned>(k_ + 1, 0));
    for (const auto& e : edges_) {
        if (e.block >= p.block_count()) {
            return false;
        }
        const auto& closed = view.closed_blocks[e.block];
        if (!std::binary_search(closed.begin(), closed.end(), e.u) ||
            !std::binary_search(closed.begin(), closed.end(), e.v)) {
            return false;
        }
        total[e.u] += 1;
        total[e.v] += 1;
        per_block[e.block][e.u] += 1;
        per_block[e.block][e.v] += 1;
    }
    for (unsigned l = 1; l <= k_; ++l) {
        if (total[l] != 2) {
            return false;
        }
    }
    for (unsigned s = 0; s < p.block_count(); ++s) {
        for (unsigned l : view.closed_blocks[s]) {
            if (per_block[s][l] != view.multiplicity_of(l)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

using Matching = std::vector<GraphEdge>;

// Distinct perfect matchings of a vertex multiset, each produced once in
// sorted order: the smallest remaining vertex x pairs with a partner v >= x,
// and a second pairing of the same x uses a partner no smaller than the
// first.
void matchings_rec(std::vector<unsigned>& slots, unsigned block, unsigned last_x,
                   unsigned last_partner, Matching& current, std::vector<Matching>& out)
{
    unsigned x = 0;
    for (unsigned l = 1; l < slots.size(); ++l) {
        if (slots[l] > 0) {
            x = l;
            break;
        }
    }
    if (x == 0) {
        out.push_back(current);
        return;
    }
    --slots[x];
    unsigned lower = x == last_x ? last_partner : x;
    for (unsigned v = lower; v < slots.size(); ++v) {
        if (slots[v] == 0) {
            continue;
        }
        --slots[v];
        current.push_back(GraphEdge{x, v, block});
        matchings_rec(slots, block, x, v, current, out);
        current.pop_back();
        ++slots[v];
    }
    ++slots[x];
}

}  // namespace

std::vector<ConsistentGraph> enumerate_consistent_graphs(const Partition& p)
{
    const unsigned k = p.size();
    if (k > max_graph_size) {
        throw BoundError("consistent graph enumeration requires k <= " +
                         std::to_string(max_graph_size));
    }
    ClosedBlockView view(p);
    std::vector<std::vector<Matching>> per_block(p.block_count());
    for (unsigned s = 0; s < p.block_count(); ++s) {
        std::vector<unsigned> slots(k + 1, 0);
        for (unsigned l : view.closed_blocks[s]) {
            slots[l] = view.multiplicity_of(l);
        }
        Matching current;
        matchings_rec(slots, s, 0, 0, current, per_block[s]);
    }

    std::vector<ConsistentGraph> out;
    std::vector<std::size_t> choice(per_block.size(), 0);
    while (true) {
        std::vector<GraphEdge> edges;
        edges.reserve(k);
        for (std::size_t s = 0; s < per_block.size(); ++s) {
            const auto& m = per_block[s][choice[s]];
            edges.insert(edges.end(), m.begin(), m.end());
        }
        out.emplace_back(k, std::move(edges));
        // Odometer over the per-block choices, last block fastest.
        std::size_t s = per_block.size();
        while (s > 0) {
            --s;
            if (++choice[s] < per_block[s].size()) {
                break;
            }
            choice[s] = 0;
            if (s == 0) {
                return out;
            }
        }
    }
}

std::vector<ConsistentGraph> max_component_graphs(const Partition& p)
{
    const unsigned target = p.size() - p.block_count() + 1;
    std::vector<ConsistentGraph> out;
    for (auto& g : enumerate_consistent_graphs(p)) {
        if (g.component_count() == target) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace rmtlaw::nc

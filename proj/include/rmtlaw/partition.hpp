#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rmtlaw::nc {

// Largest ground set a Partition can hold.
inline constexpr unsigned max_partition_size = 255;
// Largest k accepted by the exhaustive enumerators.
inline constexpr unsigned max_enumeration_size = 12;

// A set partition of {1..k}, always held in canonical form: blocks ordered
// by least element, elements ascending within a block. Internally this is
// the restricted growth string of block labels.
class Partition {
public:
    // Blocks hold 1-based elements in any order; they must be nonempty,
    // pairwise disjoint and cover {1..k}.
    Partition(unsigned k, const std::vector<std::vector<unsigned>>& blocks);

    // labels[l - 1] is an arbitrary block label of element l.
    static Partition from_labels(const std::vector<unsigned>& labels);
    static Partition singletons(unsigned k);
    static Partition full(unsigned k);

    // "1,2,4|3|5"; elements and blocks may come in any order.
    static Partition parse(std::string_view text);

    unsigned size() const { return static_cast<unsigned>(labels_.size()); }
    unsigned block_count() const { return block_count_; }

    // 0-based index of the canonical block containing 1-based element l.
    unsigned block_of(unsigned element) const { return labels_[element - 1]; }
    bool same_block(unsigned a, unsigned b) const { return block_of(a) == block_of(b); }

    std::vector<std::vector<unsigned>> blocks() const;
    std::vector<unsigned> block_sizes() const;

    // Canonical text form, e.g. "1,2,4|3|5".
    std::string to_string() const;

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

private:
    Partition() = default;
    void canonicalize(const std::vector<unsigned>& labels);

    std::vector<std::uint8_t> labels_;
    unsigned block_count_ = 0;
};

// Calls visit for every set partition of {1..k} in restricted-growth order.
void for_each_partition(unsigned k, const std::function<void(const Partition&)>& visit);

// All Bell(k) partitions of {1..k}; 1 <= k <= max_enumeration_size.
std::vector<Partition> enumerate_partitions(unsigned k);

// All non-crossing partitions of {1..k}; same bound.
std::vector<Partition> enumerate_noncrossing(unsigned k);

// True iff there are no a < b < c < d with a ~ c, b ~ d in distinct blocks.
bool is_noncrossing(const Partition& p);

// Kreweras complement on the interlaced circle 1 1' 2 2' ... k k', with the
// primed points relabeled i' -> i. Throws DomainError on crossing input.
Partition kreweras_complement(const Partition& p);

}  // namespace rmtlaw::nc

#include "rmtlaw/partition.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "rmtlaw/error.hpp"

namespace rmtlaw::nc {

namespace {

void check_size(unsigned k)
{
    if (k == 0 || k > max_partition_size) {
        throw DomainError("partition size must lie in [1, " + std::to_string(max_partition_size) +
                          "]");
    }
}

void check_enumeration_size(unsigned k)
{
    if (k == 0 || k > max_enumeration_size) {
        throw BoundError("exhaustive partition enumeration requires 1 <= k <= " +
                         std::to_string(max_enumeration_size));
    }
}

}  // namespace

Partition::Partition(unsigned k, const std::vector<std::vector<unsigned>>& blocks)
{
    check_size(k);
    constexpr unsigned unset = ~0u;
    std::vector<unsigned> labels(k, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw DomainError("partition blocks must be nonempty");
        }
        for (unsigned e : blocks[b]) {
            if (e == 0 || e > k) {
                throw DomainError("partition element " + std::to_string(e) + " outside {1.." +
                                  std::to_string(k) + "}");
            }
            if (labels[e - 1] != unset) {
                throw DomainError("partition element " + std::to_string(e) + " appears twice");
            }
            labels[e - 1] = static_cast<unsigned>(b);
        }
    }
    for (unsigned l = 0; l < k; ++l) {
        if (labels[l] == unset) {
            throw DomainError("partition does not cover element " + std::to_string(l + 1));
        }
    }
    canonicalize(labels);
}

Partition Partition::from_labels(const std::vector<unsigned>& labels)
{
    check_size(static_cast<unsigned>(labels.size()));
    Partition p;
    p.canonicalize(labels);
    return p;
}

Partition Partition::singletons(unsigned k)
{
    check_size(k);
    std::vector<unsigned> labels(k);
    for (unsigned l = 0; l < k; ++l) {
        labels[l] = l;
    }
    return from_labels(labels);
}

Partition Partition::full(unsigned k)
{
    check_size(k);
    return from_labels(std::vector<unsigned>(k, 0));
}

void Partition::canonicalize(const std::vector<unsigned>& labels)
{
    std::map<unsigned, unsigned> relabel;
    labels_.resize(labels.size());
    for (std::size_t l = 0; l < labels.size(); ++l) {
        auto [it, inserted] = relabel.try_emplace(labels[l], static_cast<unsigned>(relabel.size()));
        labels_[l] = static_cast<std::uint8_t>(it->second);
    }
    block_count_ = static_cast<unsigned>(relabel.size());
}

Partition Partition::parse(std::string_view text)
{
    std::vector<std::vector<unsigned>> blocks(1);
    unsigned max_element = 0;
    std::size_t pos = 0;
    bool expect_number = true;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == ' ') {
            ++pos;
            continue;
        }
        if (expect_number) {
            unsigned value = 0;
            auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
            if (ec != std::errc{} || end == text.data() + pos) {
                throw ParseError("malformed partition '" + std::string(text) + "'");
            }
            if (value == 0 || value > max_partition_size) {
                throw ParseError("partition element out of range in '" + std::string(text) + "'");
            }
            blocks.back().push_back(value);
            max_element = std::max(max_element, value);
            pos = static_cast<std::size_t>(end - text.data());
            expect_number = false;
        } else if (c == ',') {
            expect_number = true;
            ++pos;
        } else if (c == '|') {
            blocks.emplace_back();
            expect_number = true;
            ++pos;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "' in partition '" +
                             std::string(text) + "'");
        }
    }
    if (expect_number) {
        throw ParseError("malformed partition '" + std::string(text) + "'");
    }
    try {
        return Partition(max_element, blocks);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

std::vector<std::vector<unsigned>> Partition::blocks() const
{
    std::vector<std::vector<unsigned>> out(block_count_);
    for (unsigned l = 0; l < size(); ++l) {
        out[labels_[l]].push_back(l + 1);
    }
    return out;
}

std::vector<unsigned> Partition::block_sizes() const
{
    std::vector<unsigned> out(block_count_, 0);
    for (auto label : labels_) {
        ++out[label];
    }
    return out;
}

std::string Partition::to_string() const
{
    std::string out;
    bool first_block = true;
    for (const auto& block : blocks()) {
        if (!first_block) {
            out += '|';
        }
        first_block = false;
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += std::to_string(block[i]);
        }
    }
    return out;
}

namespace {

void partitions_rec(unsigned k, unsigned pos, unsigned used, std::vector<unsigned>& labels,
                    const std::function<void(const Partition&)>& visit)
{
    if (pos == k) {
        visit(Partition::from_labels(labels));
        return;
    }
    for (unsigned b = 0; b <= used; ++b) {
        labels[pos] = b;
        partitions_rec(k, pos + 1, b == used ? used + 1 : used, labels, visit);
    }
}

}  // namespace

void for_each_partition(unsigned k, const std::function<void(const Partition&)>& visit)
{
    check_enumeration_size(k);
    std::vector<unsigned> labels(k, 0);
    partitions_rec(k, 1, 1, labels, visit);
}

std::vector<Partition> enumerate_partitions(unsigned k)
{
    std::vector<Partition> out;
    for_each_partition(k, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<Partition> enumerate_noncrossing(unsigned k)
{
    std::vector<Partition> out;
    for_each_partition(k, [&](const Partition& p) {
        if (is_noncrossing(p)) {
            out.push_back(p);
        }
    });
    return out;
}

bool is_noncrossing(const Partition& p)
{
    const unsigned k = p.size();
    std::vector<unsigned> last(p.block_count(), 0);
    for (unsigned l = 1; l <= k; ++l) {
        last[p.block_of(l)] = l;
    }
    // A block may be revisited only when every block opened after it has
    // already been closed, i.e. when it is on top of the stack.
    std::vector<unsigned> open;
    std::vector<bool> opened(p.block_count(), false);
    for (unsigned l = 1; l <= k; ++l) {
        unsigned b = p.block_of(l);
        if (!opened[b]) {
            opened[b] = true;
            open.push_back(b);
        } else if (open.back() != b) {
            return false;
        }
        if (last[b] == l) {
            open.pop_back();
        }
    }
    return true;
}

Partition kreweras_complement(const Partition& p)
{
    if (!is_noncrossing(p)) {
        throw DomainError("Kreweras complement requires a non-crossing partition, got " +
                          p.to_string());
    }
    const unsigned k = p.size();
    // Read p as the permutation cycling each block in increasing order; the
    // complement is the cycle decomposition of p^{-1} composed with the
    // rotation l -> l + 1.
    std::vector<unsigned> inverse(k + 1);
    for (const auto& block : p.blocks()) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            unsigned next = block[(i + 1) % block.size()];
            inverse[next] = block[i];
        }
    }
    std::vector<unsigned> labels(k, 0);
    std::vector<bool> seen(k + 1, false);
    unsigned label = 0;
    for (unsigned start = 1; start <= k; ++start) {
        if (seen[start]) {
            continue;
        }
        unsigned l = start;
        while (!seen[l]) {
            seen[l] = true;
            labels[l - 1] = label;
            l = inverse[l == k ? 1 : l + 1];
        }
        ++label;
    }
    return Partition::from_labels(labels);
}

}  // namespace rmtlaw::nc

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace rmtlaw::nc {

// Exact unsigned counts. Every operation that produces one checks for
// overflow and throws RangeError instead of wrapping.
using BigCount = unsigned __int128;
using BigSigned = __int128;

std::string to_string(BigCount value);
std::string to_string(BigSigned value);
double to_double(BigCount value);

BigCount checked_mul(BigCount a, BigCount b);
BigCount checked_add(BigCount a, BigCount b);
BigCount factorial(unsigned n);
BigCount binomial(unsigned n, unsigned r);

// (i_1, ..., i_s) with i_1 + ... + i_s = k - s + 1 and
// i_1 + 2 i_2 + ... + s i_s = k.
struct Composition {
    unsigned k = 0;
    std::vector<unsigned> counts;  // counts[l - 1] = i_l

    unsigned s() const { return static_cast<unsigned>(counts.size()); }
    bool operator==(const Composition&) const = default;
};

// All compositions for (k, s) in lexicographic order of (i_1, ..., i_s).
std::vector<Composition> enumerate_compositions(unsigned k, unsigned s);

// Number of non-crossing partitions of {1..k} having counts.at(l) blocks of
// size l: k! / ((k - q + 1)! * prod counts(l)!), q the total block count.
BigCount count_nc_by_block_sizes(unsigned k, const std::map<unsigned, unsigned>& counts);

// Number of non-crossing partitions of {1..k} with i + 1 blocks,
// (1/k) C(k, i) C(k, i + 1).
BigCount narayana(unsigned k, unsigned i);

}  // namespace rmtlaw::nc

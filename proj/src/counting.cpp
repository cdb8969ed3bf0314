#include "rmtlaw/counting.hpp"

#include <algorithm>

#include "rmtlaw/error.hpp"

namespace rmtlaw::nc {

namespace {

BigCount gcd(BigCount a, BigCount b)
{
    while (b != 0) {
        BigCount t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::string to_string(BigCount value)
{
    if (value == 0) {
        return "0";
    }
    std::string digits;
    while (value != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::string to_string(BigSigned value)
{
    if (value < 0) {
        // Negate in unsigned space so the most negative value is handled.
        return "-" + to_string(static_cast<BigCount>(0) - static_cast<BigCount>(value));
    }
    return to_string(static_cast<BigCount>(value));
}

double to_double(BigCount value)
{
    return static_cast<double>(value);
}

BigCount checked_mul(BigCount a, BigCount b)
{
    BigCount out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw RangeError("exact count exceeds 128-bit range");
    }
    return out;
}

BigCount checked_add(BigCount a, BigCount b)
{
    BigCount out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw RangeError("exact count exceeds 128-bit range");
    }
    return out;
}

BigCount factorial(unsigned n)
{
    BigCount out = 1;
    for (unsigned i = 2; i <= n; ++i) {
        out = checked_mul(out, i);
    }
    return out;
}

BigCount binomial(unsigned n, unsigned r)
{
    if (r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    BigCount out = 1;
    // out * (n - r + i) / i stays integral at each step; divide by gcd first
    // so the intermediate product overflows only when the result nearly does.
    for (unsigned i = 1; i <= r; ++i) {
        BigCount num = n - r + i;
        BigCount den = i;
        BigCount g = gcd(out, den);
        out /= g;
        den /= g;
        num /= den;  // den now divides num
        out = checked_mul(out, num);
    }
    return out;
}

namespace {

void compositions_rec(unsigned k, unsigned s, unsigned level, unsigned remaining_count,
                      unsigned remaining_weight, std::vector<unsigned>& current,
                      std::vector<Composition>& out)
{
    if (level > s) {
        if (remaining_count == 0 && remaining_weight == 0) {
            out.push_back(Composition{k, current});
        }
        return;
    }
    unsigned max_i = std::min(remaining_count, remaining_weight / level);
    for (unsigned i = 0; i <= max_i; ++i) {
        current[level - 1] = i;
        compositions_rec(k, s, level + 1, remaining_count - i, remaining_weight - i * level,
                         current, out);
    }
    current[level - 1] = 0;
}

}  // namespace

std::vector<Composition> enumerate_compositions(unsigned k, unsigned s)
{
    if (k == 0 || s == 0 || s > k) {
        throw DomainError("enumerate_compositions requires 1 <= s <= k");
    }
    std::vector<Composition> out;
    std::vector<unsigned> current(s, 0);
    compositions_rec(k, s, 1, k - s + 1, k, current, out);
    return out;
}

BigCount count_nc_by_block_sizes(unsigned k, const std::map<unsigned, unsigned>& counts)
{
    if (k == 0) {
        throw DomainError("k must be positive");
    }
    unsigned long long weight = 0;
    unsigned long long q = 0;
    for (auto [size, mult] : counts) {
        if (size == 0) {
            throw DomainError("block size must be positive");
        }
        weight += static_cast<unsigned long long>(size) * mult;
        q += mult;
    }
    if (weight != k) {
        throw DomainError("block sizes do not sum to k");
    }
    if (q == 0 || q > k) {
        throw DomainError("block count must lie in [1, k]");
    }
    // k! / (k - q + 1)! as a falling product, then exact division by each
    // multiplicity factorial: the full product of those divides it.
    BigCount out = 1;
    for (unsigned long long f = k - q + 2; f <= k; ++f) {
        out = checked_mul(out, static_cast<BigCount>(f));
    }
    for (auto [size, mult] : counts) {
        out /= factorial(mult);
    }
    return out;
}

BigCount narayana(unsigned k, unsigned i)
{
    if (k == 0) {
        throw DomainError("k must be positive");
    }
    if (i >= k) {
        throw DomainError("narayana requires 0 <= i <= k - 1");
    }
    // (1/(i+1)) C(k, i) C(k-1, i): both factors exact, division exact.
    BigCount a = binomial(k, i);
    BigCount b = binomial(k - 1, i);
    BigCount g = gcd(a, static_cast<BigCount>(i + 1));
    a /= g;
    b /= (static_cast<BigCount>(i + 1) / g);
    return checked_mul(a, b);
}

}  // namespace rmtlaw::nc

#include "rmtlaw/moments.hpp"

#include <cmath>

#include "rmtlaw/error.hpp"
#include "rmtlaw/partition.hpp"

namespace rmtlaw::moments {

std::string to_string(SequenceOrigin origin)
{
    switch (origin) {
    case SequenceOrigin::finite_trace:
        return "finite-trace";
    case SequenceOrigin::szego_quadrature:
        return "szego-quadrature";
    case SequenceOrigin::closed_form:
        return "closed-form";
    case SequenceOrigin::user:
        return "user";
    }
    return "user";
}

AspectRatio::AspectRatio(double y) : y_(y)
{
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw DomainError("aspect ratio y must be a positive finite number");
    }
}

AspectRatio AspectRatio::from_dims(std::uint64_t m, std::uint64_t n)
{
    if (m == 0 || n == 0) {
        throw DomainError("aspect ratio dimensions must be positive");
    }
    AspectRatio out(static_cast<double>(m) / static_cast<double>(n));
    out.m_ = m;
    out.n_ = n;
    return out;
}

namespace {

void check_order(unsigned k, const MomentOptions& options)
{
    if (k == 0) {
        throw DomainError("moment order k must be positive");
    }
    if (k > options.max_order) {
        throw BoundError("moment order " + std::to_string(k) + " exceeds the cap of " +
                         std::to_string(options.max_order));
    }
}

template <typename Sequence>
void check_length(unsigned k, const Sequence& seq, const char* name)
{
    if (seq.size() < k) {
        throw DomainError(std::string(name) + " sequence has " + std::to_string(seq.size()) +
                          " terms, order " + std::to_string(k) + " needs " + std::to_string(k));
    }
}

// k! / (s! prod i_l!): the number of non-crossing partitions of {1..k} with
// i_l blocks of size l.
nc::BigCount composition_coefficient(const nc::Composition& c)
{
    nc::BigCount out = nc::factorial(c.k) / nc::factorial(c.s());
    for (unsigned i : c.counts) {
        out /= nc::factorial(i);
    }
    return out;
}

template <typename Sequence>
double composition_product(const nc::Composition& c, const Sequence& h)
{
    double prod = 1.0;
    for (unsigned l = 1; l <= c.s(); ++l) {
        unsigned power = c.counts[l - 1];
        for (unsigned p = 0; p < power; ++p) {
            prod *= h[l];
        }
    }
    return prod;
}

template <typename Sequence>
double inverse_factorial_sum(unsigned k, unsigned s, const Sequence& h)
{
    double sum = 0.0;
    for (const auto& c : nc::enumerate_compositions(k, s)) {
        double term = composition_product(c, h);
        for (unsigned i : c.counts) {
            term /= nc::to_double(nc::factorial(i));
        }
        sum += term;
    }
    return sum;
}

}  // namespace

double limiting_moment(unsigned k, const AspectRatio& y, const HSequence& h,
                       const MomentOptions& options)
{
    check_order(k, options);
    check_length(k, h, "H");
    double total = 0.0;
    for (unsigned s = 1; s <= k; ++s) {
        double inner = 0.0;
        for (const auto& c : nc::enumerate_compositions(k, s)) {
            inner += nc::to_double(composition_coefficient(c)) * composition_product(c, h);
        }
        total += std::pow(y.value(), static_cast<double>(k - s)) * inner;
    }
    return total;
}

double limiting_moment_via_nc(unsigned k, const AspectRatio& y, const HSequence& h)
{
    constexpr unsigned max_nc_order = 10;
    if (k == 0) {
        throw DomainError("moment order k must be positive");
    }
    if (k > max_nc_order) {
        throw BoundError("non-crossing enumeration requires k <= " + std::to_string(max_nc_order));
    }
    check_length(k, h, "H");
    double total = 0.0;
    nc::for_each_partition(k, [&](const nc::Partition& p) {
        if (!nc::is_noncrossing(p)) {
            return;
        }
        double term = std::pow(y.value(), static_cast<double>(p.block_count() - 1));
        for (unsigned size : p.block_sizes()) {
            term *= h[size];
        }
        total += term;
    });
    return total;
}

double mp_moment(unsigned k, const AspectRatio& y, double variance, const MomentOptions& options)
{
    check_order(k, options);
    if (!(variance >= 0.0)) {
        throw DomainError("variance must be nonnegative");
    }
    double sum = 0.0;
    for (unsigned i = 0; i < k; ++i) {
        sum += std::pow(y.value(), static_cast<double>(i)) * nc::to_double(nc::narayana(k, i));
    }
    return std::pow(variance, static_cast<double>(k)) * sum;
}

double qform_moment(unsigned k, const AspectRatio& y, const HSequence& h, const QSequence& q,
                    const MomentOptions& options)
{
    check_order(k, options);
    check_length(k, h, "H");
    check_length(k, q, "H~");
    double total = 0.0;
    for (unsigned s = 1; s <= k; ++s) {
        nc::BigCount weight = nc::checked_mul(
            nc::checked_mul(k, nc::factorial(k - s)), nc::factorial(s - 1));
        double h_sum = inverse_factorial_sum(k, s, h);
        double q_sum = inverse_factorial_sum(k, k - s + 1, q);
        total += std::pow(y.value(), static_cast<double>(k - s)) * nc::to_double(weight) * h_sum *
                 q_sum;
    }
    return total;
}

namespace {

nc::BigSigned checked_smul(nc::BigSigned a, nc::BigSigned b)
{
    nc::BigSigned out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw RangeError("exact moment exceeds 128-bit range");
    }
    return out;
}

nc::BigSigned checked_sadd(nc::BigSigned a, nc::BigSigned b)
{
    nc::BigSigned out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw RangeError("exact moment exceeds 128-bit range");
    }
    return out;
}

}  // namespace

std::vector<nc::BigSigned> exact_moment_polynomial(unsigned k, std::span<const std::int64_t> h)
{
    check_order(k, MomentOptions{});
    if (h.size() < k) {
        throw DomainError("H sequence shorter than the moment order");
    }
    std::vector<nc::BigSigned> coefficients(k, 0);
    for (unsigned s = 1; s <= k; ++s) {
        nc::BigSigned inner = 0;
        for (const auto& c : nc::enumerate_compositions(k, s)) {
            auto term = static_cast<nc::BigSigned>(composition_coefficient(c));
            for (unsigned l = 1; l <= s; ++l) {
                for (unsigned p = 0; p < c.counts[l - 1]; ++p) {
                    term = checked_smul(term, h[l - 1]);
                }
            }
            inner = checked_sadd(inner, term);
        }
        coefficients[k - s] = inner;
    }
    return coefficients;
}

ExactRational evaluate_exact(std::span<const nc::BigSigned> coefficients, std::int64_t num,
                             std::int64_t den)
{
    if (den <= 0) {
        throw DomainError("denominator must be positive");
    }
    if (coefficients.empty()) {
        return {};
    }
    const std::size_t degree = coefficients.size() - 1;
    ExactRational out;
    out.denominator = 1;
    for (std::size_t d = 0; d < degree; ++d) {
        out.denominator = checked_smul(out.denominator, den);
    }
    // sum_j c_j num^j den^{degree - j}
    for (std::size_t j = 0; j <= degree; ++j) {
        nc::BigSigned term = coefficients[j];
        for (std::size_t p = 0; p < j; ++p) {
            term = checked_smul(term, num);
        }
        for (std::size_t p = j; p < degree; ++p) {
            term = checked_smul(term, den);
        }
        out.numerator = checked_sadd(out.numerator, term);
    }
    return out;
}

}  // namespace rmtlaw::moments

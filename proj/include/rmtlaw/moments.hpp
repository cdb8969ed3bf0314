#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmtlaw/counting.hpp"

namespace rmtlaw::moments {

enum class SequenceOrigin { finite_trace, szego_quadrature, closed_form, user };

std::string to_string(SequenceOrigin origin);

// H_1..H_K, the limits (or finite-m values) of (1/m) tr(T_m^k).
struct HSequence {
    std::vector<double> values;
    SequenceOrigin origin = SequenceOrigin::user;
    std::size_t trace_dimension = 0;  // m for finite_trace, else 0

    std::size_t size() const { return values.size(); }
    // 1-based access, H_k.
    double operator[](std::size_t k) const { return values[k - 1]; }
};

// H~_1..H~_K, the limits of (1/n) tr(Q_n^k) for the quadratic-form weight.
struct QSequence {
    std::vector<double> values;
    SequenceOrigin origin = SequenceOrigin::user;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k - 1]; }
};

// y = lim m/n, optionally remembering the exact (m, n).
class AspectRatio {
public:
    explicit AspectRatio(double y);
    static AspectRatio from_dims(std::uint64_t m, std::uint64_t n);

    double value() const { return y_; }
    std::optional<std::uint64_t> m() const { return m_; }
    std::optional<std::uint64_t> n() const { return n_; }

private:
    double y_;
    std::optional<std::uint64_t> m_;
    std::optional<std::uint64_t> n_;
};

inline constexpr unsigned default_max_order = 20;

// Orders above default_max_order are refused unless raised here; past 20
// the float result loses relative precision to coefficient growth and exact
// counts overflow 128 bits beyond k = 33.
struct MomentOptions {
    unsigned max_order = default_max_order;
};

// k-th moment of the limiting spectral distribution of (1/n) X X^T:
//   sum_{s=1}^{k} y^{k-s} (k!/s!) sum_{compositions (k,s)} prod_l H_l^{i_l} / i_l!
// Each coefficient (k!/s!) / prod i_l! is an exact integer; the sum runs in
// ascending s and lexicographic composition order.
double limiting_moment(unsigned k, const AspectRatio& y, const HSequence& h,
                       const MomentOptions& options = {});

// The same moment written as a sum over non-crossing partitions,
//   sum_{pi in NC(k)} y^{#pi - 1} prod_{blocks B} H_{|B|},  k <= 10.
double limiting_moment_via_nc(unsigned k, const AspectRatio& y, const HSequence& h);

// Marchenko-Pastur moment sigma^{2k} sum_{i=0}^{k-1} y^i N(k, i).
double mp_moment(unsigned k, const AspectRatio& y, double variance,
                 const MomentOptions& options = {});

// Limiting k-th moment of (1/n) X Q X^T for a deterministic symmetric Q with
// normalized power traces q.
double qform_moment(unsigned k, const AspectRatio& y, const HSequence& h, const QSequence& q,
                    const MomentOptions& options = {});

// Exact form of limiting_moment for integer H: coefficient c_j of y^j,
// j = 0..k-1, in 128-bit signed arithmetic.
std::vector<nc::BigSigned> exact_moment_polynomial(unsigned k, std::span<const std::int64_t> h);

struct ExactRational {
    nc::BigSigned numerator = 0;
    nc::BigSigned denominator = 1;
};

// Evaluates sum_j c_j y^j at y = num/den without rounding; the result keeps
// the denominator den^{deg} unreduced.
ExactRational evaluate_exact(std::span<const nc::BigSigned> coefficients, std::int64_t num,
                             std::int64_t den);

}  // namespace rmtlaw::moments

#include "rmtlaw/joint_moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rmtlaw/error.hpp"

namespace rmtlaw::models {

namespace {

template <typename Covariance>
double pairings_sum(const Covariance& t, std::vector<std::size_t>& rest)
{
    if (rest.empty()) {
        return 1.0;
    }
    std::size_t first = rest.back();
    rest.pop_back();
    double total = 0.0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        std::size_t partner = rest[j];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
        total += t(first, partner) * pairings_sum(t, rest);
        rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(j), partner);
    }
    rest.push_back(first);
    return total;
}

void check_isserlis_indices(std::span<const std::size_t> indices)
{
    if (indices.size() % 2 != 0) {
        throw DomainError("Isserlis moment needs an even number of indices");
    }
    if (indices.size() > max_isserlis_indices) {
        throw BoundError("Isserlis moment supports at most 12 indices");
    }
    for (auto i : indices) {
        if (i == 0) {
            throw DomainError("indices are 1-based");
        }
    }
}

}  // namespace

double isserlis_moment(const CovarianceSpec& cov, std::span<const std::size_t> indices)
{
    check_isserlis_indices(indices);
    std::vector<std::size_t> rest(indices.begin(), indices.end());
    return pairings_sum(cov, rest);
}

double isserlis_moment(const Eigen::MatrixXd& cov, std::span<const std::size_t> indices)
{
    check_isserlis_indices(indices);
    for (auto i : indices) {
        if (i > static_cast<std::size_t>(cov.rows())) {
            throw DomainError("index exceeds covariance matrix size");
        }
    }
    auto t = [&](std::size_t i, std::size_t j) {
        return cov(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
    };
    std::vector<std::size_t> rest(indices.begin(), indices.end());
    return pairings_sum(t, rest);
}

double chain_joint_moment(const FiniteMarkovChain& chain, std::span<const std::size_t> indices)
{
    validate(chain);
    if (indices.size() > max_chain_indices) {
        throw BoundError("chain joint moment supports at most 12 indices");
    }
    if (!std::is_sorted(indices.begin(), indices.end())) {
        throw DomainError("chain joint moment needs sorted indices");
    }
    for (auto i : indices) {
        if (i == 0 || i > max_chain_index) {
            throw DomainError("chain indices must lie in 1..10000");
        }
    }
    const auto n = static_cast<Eigen::Index>(chain.states.size());
    Eigen::RowVectorXd row = Eigen::Map<const Eigen::RowVectorXd>(chain.stationary.data(), n);
    if (indices.empty()) {
        return row.sum();
    }
    Eigen::RowVectorXd d = Eigen::Map<const Eigen::RowVectorXd>(chain.states.data(), n);
    row = row.cwiseProduct(d);
    for (std::size_t r = 1; r < indices.size(); ++r) {
        for (std::size_t step = indices[r - 1]; step < indices[r]; ++step) {
            row = row * chain.transition;
        }
        row = row.cwiseProduct(d);
    }
    return row.sum();
}

double chain_joint_moment(const TwoStateChain& chain, std::span<const std::size_t> indices)
{
    return chain_joint_moment(as_finite_chain(chain), indices);
}

DecayReport check_product_decay(const FiniteMarkovChain& chain, unsigned k, std::size_t trials,
                                RngStream& stream, std::size_t max_index)
{
    if (k == 0 || k > 4) {
        throw BoundError("check_product_decay supports 1 <= k <= 4");
    }
    if (max_index == 0 || max_index > max_chain_index) {
        throw DomainError("max_index must lie in 1..10000");
    }
    CovarianceSpec cov(chain);
    DecayReport report;
    report.k = k;
    report.trials = trials;
    report.mixing_rate = cov.decay_rate();
    const double alpha = report.mixing_rate;

    std::vector<std::size_t> idx(2 * k);
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& i : idx) {
            i = 1 + static_cast<std::size_t>(stream.uniform() * static_cast<double>(max_index));
            i = std::min(i, max_index);
        }
        std::sort(idx.begin(), idx.end());
        double product = 1.0;
        for (unsigned l = 0; l < k; ++l) {
            product *= cov(idx[2 * l], idx[2 * l + 1]);
        }
        double remainder = chain_joint_moment(chain, idx) - product;
        double bound = 0.0;
        for (unsigned l = 1; l < k; ++l) {
            bound += std::pow(alpha, static_cast<double>(idx[2 * l] - idx[2 * l - 1]));
        }
        double abs_r = std::abs(remainder);
        report.max_abs_remainder = std::max(report.max_abs_remainder, abs_r);
        if (abs_r < 1e-14) {
            continue;
        }
        double ratio = bound > 0.0 ? abs_r / bound : std::numeric_limits<double>::infinity();
        if (!std::isfinite(ratio)) {
            report.bounded = false;
        }
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    return report;
}

}  // namespace rmtlaw::models

#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "rmtlaw/models.hpp"
#include "rmtlaw/rng.hpp"

namespace rmtlaw::models {

inline constexpr std::size_t max_isserlis_indices = 12;
inline constexpr std::size_t max_chain_indices = 12;
inline constexpr std::size_t max_chain_index = 10000;

// E[a(i_1) ... a(i_2k)] for a zero-mean Gaussian process with covariance t,
// as the sum over all pairings of prod t(pair). Indices are 1-based; at most
// max_isserlis_indices of them.
double isserlis_moment(const CovarianceSpec& cov, std::span<const std::size_t> indices);
double isserlis_moment(const Eigen::MatrixXd& cov, std::span<const std::size_t> indices);

// Exact E[a(i_1) ... a(i_r)] of a stationary chain for sorted indices
// i_1 <= ... <= i_r in 1..max_chain_index:
//   pi^T D P^{i_2 - i_1} D ... P^{i_r - i_{r-1}} D 1,  D = diag(states).
double chain_joint_moment(const FiniteMarkovChain& chain, std::span<const std::size_t> indices);
double chain_joint_moment(const TwoStateChain& chain, std::span<const std::size_t> indices);

struct DecayReport {
    unsigned k = 0;
    std::size_t trials = 0;
    double mixing_rate = 0.0;
    double max_ratio = 0.0;
    double max_abs_remainder = 0.0;
    bool bounded = true;  // every sampled ratio finite
};

// Samples `trials` sorted 2k-tuples from 1..max_index and measures the
// remainder R = E[a(i_1)...a(i_2k)] - prod_l t(i_{2l-1}, i_{2l}) against
// sum_{l=1}^{k-1} alpha^{i_{2l+1} - i_{2l}}, alpha the chain's mixing rate.
// Reports the largest ratio; a remainder below 1e-14 counts as zero.
DecayReport check_product_decay(const FiniteMarkovChain& chain, unsigned k, std::size_t trials,
                                RngStream& stream, std::size_t max_index = 40);

}  // namespace rmtlaw::models

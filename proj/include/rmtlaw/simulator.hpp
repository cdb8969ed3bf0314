#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmtlaw/models.hpp"
#include "rmtlaw/rng.hpp"

namespace rmtlaw::sim {

enum class SampleMode {
    direct,           // columns are independent model paths
    remark1_gaussian  // X = L_m Y with T_m = L_m L_m^T and Gaussian Y
};

std::string to_string(SampleMode mode);
SampleMode parse_mode(std::string_view text);

// Desk-scale limits; run_monte_carlo refuses larger runs unless forced.
inline constexpr std::size_t desk_max_m = 512;
inline constexpr std::size_t desk_max_n = 1024;
inline constexpr std::size_t desk_max_replicates = 1000;
inline constexpr std::uint64_t default_budget =
    std::uint64_t{desk_max_m} * desk_max_n * desk_max_replicates;

struct SimConfig {
    models::StationaryModel model;
    std::size_t m = 2;
    std::size_t n = 2;
    std::size_t replicates = 1;
    unsigned k_max = 4;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::direct;

    // Upper bound on m * n * replicates.
    std::uint64_t budget = default_budget;
    // Skip both the desk limits and the budget.
    bool force = false;
};

// Throws DomainError/BoundError on invalid fields and BudgetError when the
// guard trips.
void validate(const SimConfig& config);

struct SpectrumSample {
    std::vector<double> eigenvalues;  // ascending, length m
    std::size_t replicate = 0;
};

struct MomentRow {
    unsigned k = 0;
    std::optional<double> predicted_limit;
    double predicted_finite = 0.0;
    double empirical_mean = 0.0;
    double empirical_stderr = 0.0;
};

struct MomentReport {
    SimConfig config;
    std::vector<MomentRow> moments;
    double runtime_seconds = 0.0;
};

struct RunOptions {
    unsigned workers = 1;
};

// Stream used by replicate r of a run with the given seed.
inline RngStream replicate_stream(std::uint64_t seed, std::size_t replicate)
{
    return RngStream(seed, replicate);
}

// One m x n data matrix for the given replicate, drawn from stream.
Eigen::MatrixXd sample_matrix(const SimConfig& config, std::size_t replicate, RngStream& stream);

// W = (1/n) X X^T.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x);

// (1/m) tr(W^k) for k = 1..k_max via eigenvalue power sums.
std::vector<double> spectral_moments(const Eigen::MatrixXd& w, unsigned k_max);

// Eigenvalues of W for every replicate, in replicate order. Each replicate
// draws from replicate_stream(seed, r), so the result does not depend on the
// worker count.
std::vector<SpectrumSample> collect_spectra(const SimConfig& config, const RunOptions& options = {});

// Averages the spectral moments of W over replicates (ascending replicate
// order) and fills the predicted columns from the moment formula with H
// taken from T_m at the simulated m (finite) and from h_limit (limit).
MomentReport run_monte_carlo(const SimConfig& config, const RunOptions& options = {});

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double density = 0.0;  // count / (total * width)
};

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t total = 0;         // all pooled values, in range or not
    std::size_t out_of_range = 0;
    std::vector<HistogramBin> bins;
};

// Uniform bins over range (default [0, 1.05 * max value]). The last bin is
// closed on the right. Throws DomainError on an empty range or bins == 0.
Histogram histogram(std::span<const double> values, std::size_t bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

Histogram eigenvalue_histogram(const SimConfig& config, std::size_t bins,
                               std::optional<std::pair<double, double>> range = std::nullopt,
                               const RunOptions& options = {});

}  // namespace rmtlaw::sim

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rmtlaw/moments.hpp"
#include "rmtlaw/rng.hpp"

namespace rmtlaw::models {

enum class IidDistribution { rademacher, gaussian };

// Independent symmetric entries with variance sigma^2.
struct IidSymmetric {
    IidDistribution distribution = IidDistribution::rademacher;
    double variance = 1.0;
};

// Stationary Gaussian AR(1) with unit variance, R(j) = p^j, |p| < 1.
struct GaussianAr1 {
    double p = 0.0;
};

// Chain on {+1, -1} that stays put with probability (1 + alpha) / 2;
// R(j) = alpha^j with a uniform stationary law.
struct TwoStateChain {
    double alpha = 0.0;
};

// A stationary chain on real states, started from `stationary`.
struct FiniteMarkovChain {
    std::vector<double> states;
    Eigen::MatrixXd transition;  // row-stochastic
    std::vector<double> stationary;
    std::string source;  // file the chain was read from, if any
};

using StationaryModel = std::variant<IidSymmetric, GaussianAr1, TwoStateChain, FiniteMarkovChain>;

// Throws DomainError when a model breaks its invariants: |p| < 1,
// |alpha| < 1, stochastic rows to 1e-12, stationarity to 1e-10, zero mean.
void validate(const StationaryModel& model);

// "iid:dist=rademacher,var=1", "ar1:p=0.5", "twostate:alpha=0.5",
// "chain:file=PATH". Throws ParseError on malformed text.
StationaryModel parse_model(std::string_view text);

// JSON document {"states":[...], "transition":[[...]], "stationary":[...]}.
FiniteMarkovChain parse_chain_json(std::string_view json_text);
FiniteMarkovChain load_chain(const std::string& path);

std::string to_string(const StationaryModel& model);

FiniteMarkovChain as_finite_chain(const TwoStateChain& chain);

// Geometric rate rho with |R(j)| <= C rho^j: p, alpha, 0 for i.i.d. and the
// second largest eigenvalue modulus of the transition matrix for a chain.
double decay_rate(const StationaryModel& model);

// Autocovariance of a stationary model; t(i, i') = R(|i - i'|).
class CovarianceSpec {
public:
    explicit CovarianceSpec(StationaryModel model);

    double autocovariance(std::size_t lag) const;
    double operator()(std::size_t i, std::size_t j) const
    {
        return autocovariance(i > j ? i - j : j - i);
    }

    double decay_rate() const { return rate_; }
    const StationaryModel& model() const { return model_; }

private:
    StationaryModel model_;
    double rate_;
};

// T_m = (R(|i - i'|)), symmetric Toeplitz.
Eigen::MatrixXd covariance_matrix(const StationaryModel& model, std::size_t m);

// H_k^{(m)} = (1/m) tr(T_m^k) for k = 1..k_max from the eigenvalues of T_m.
moments::HSequence h_finite(const StationaryModel& model, std::size_t m, unsigned k_max);

// f(x) = sum_j R(j) e^{2 pi i j x}; i.i.d., AR(1) and two-state models only.
double spectral_density(const StationaryModel& model, double x);

// H_k = int_0^1 f(x)^k dx by composite Simpson with szego_panels panels.
// Refuses |rho| > max_szego_rate, where f is too peaked.
inline constexpr std::size_t szego_panels = 4096;
inline constexpr double max_szego_rate = 0.95;
moments::HSequence h_szego(const StationaryModel& model, unsigned k_max);

// Limiting H sequence when one is available without simulation: the closed
// form sigma^{2k} for i.i.d. entries, Szego quadrature for AR(1) and
// two-state chains; nullopt otherwise.
std::optional<moments::HSequence> h_limit(const StationaryModel& model, unsigned k_max);

// One stationary path a(1..m), written into out.
void sample_path(const StationaryModel& model, std::span<double> out, RngStream& stream);
std::vector<double> sample_path(const StationaryModel& model, std::size_t m, RngStream& stream);

}  // namespace rmtlaw::models

#include "rmtlaw/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rmtlaw/error.hpp"
#include "rmtlaw/linalg.hpp"
#include "rmtlaw/moments.hpp"

namespace rmtlaw::sim {

std::string to_string(SampleMode mode)
{
    return mode == SampleMode::direct ? "direct" : "remark1";
}

SampleMode parse_mode(std::string_view text)
{
    if (text == "direct") {
        return SampleMode::direct;
    }
    if (text == "remark1" || text == "remark1-gaussian") {
        return SampleMode::remark1_gaussian;
    }
    throw ParseError("unknown sampling mode '" + std::string(text) + "'");
}

void validate(const SimConfig& config)
{
    models::validate(config.model);
    if (config.m < 2 || config.n < 2) {
        throw DomainError("simulation needs m >= 2 and n >= 2");
    }
    if (config.replicates < 1) {
        throw DomainError("simulation needs at least one replicate");
    }
    if (config.k_max < 1 || config.k_max > moments::default_max_order) {
        throw BoundError("simulation k_max must lie in [1, 20]");
    }
    if (config.force) {
        return;
    }
    if (config.m > desk_max_m || config.n > desk_max_n || config.replicates > desk_max_replicates) {
        throw BudgetError("run exceeds desk scale (m <= 512, n <= 1024, replicates <= 1000); "
                          "pass --force to override");
    }
    long double work = static_cast<long double>(config.m) * config.n * config.replicates;
    if (work > static_cast<long double>(config.budget)) {
        throw BudgetError("m * n * replicates exceeds the compute budget of " +
                          std::to_string(config.budget));
    }
}

namespace {

class MatrixSampler {
public:
    explicit MatrixSampler(const SimConfig& config) : config_(config)
    {
        if (config.mode == SampleMode::remark1_gaussian) {
            Eigen::LLT<Eigen::MatrixXd> llt(models::covariance_matrix(config.model, config.m));
            if (llt.info() != Eigen::Success) {
                throw NumericError("Cholesky factorization of T_m failed");
            }
            cholesky_ = llt.matrixL();
        }
    }

    Eigen::MatrixXd sample(RngStream& stream) const
    {
        const auto m = static_cast<Eigen::Index>(config_.m);
        const auto n = static_cast<Eigen::Index>(config_.n);
        Eigen::MatrixXd x(m, n);
        if (config_.mode == SampleMode::direct) {
            for (Eigen::Index j = 0; j < n; ++j) {
                models::sample_path(config_.model, std::span<double>(x.col(j).data(), config_.m),
                                    stream);
            }
            return x;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < m; ++i) {
                x(i, j) = stream.normal();
            }
        }
        return cholesky_.triangularView<Eigen::Lower>() * x;
    }

private:
    const SimConfig& config_;
    Eigen::MatrixXd cholesky_;
};

SpectrumSample spectrum_of(const Eigen::MatrixXd& x, std::size_t replicate)
{
    SpectrumSample out;
    out.replicate = replicate;
    out.eigenvalues = linalg::symmetric_eigenvalues(sample_covariance(x));
    if (!out.eigenvalues.empty()) {
        double scale = std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
        if (out.eigenvalues.front() < -1e-8 * scale) {
            throw NumericError("sample covariance has a negative eigenvalue beyond roundoff");
        }
    }
    return out;
}

}  // namespace

Eigen::MatrixXd sample_matrix(const SimConfig& config, std::size_t replicate, RngStream& stream)
{
    validate(config);
    if (replicate >= config.replicates) {
        throw DomainError("replicate index out of range");
    }
    return MatrixSampler(config).sample(stream);
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x)
{
    Eigen::MatrixXd w = x * x.transpose();
    w /= static_cast<double>(x.cols());
    return w;
}

std::vector<double> spectral_moments(const Eigen::MatrixXd& w, unsigned k_max)
{
    auto eigenvalues = linalg::symmetric_eigenvalues(w);
    return linalg::power_moments(eigenvalues, k_max);
}

std::vector<SpectrumSample> collect_spectra(const SimConfig& config, const RunOptions& options)
{
    validate(config);
    MatrixSampler sampler(config);
    std::vector<SpectrumSample> results(config.replicates);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            std::size_t r = next.fetch_add(1);
            if (r >= config.replicates) {
                return;
            }
            try {
                RngStream stream = replicate_stream(config.seed, r);
                results[r] = spectrum_of(sampler.sample(stream), r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(config.replicates);
                return;
            }
        }
    };

    unsigned workers = std::max(1u, options.workers);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.replicates));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

MomentReport run_monte_carlo(const SimConfig& config, const RunOptions& options)
{
    auto start = std::chrono::steady_clock::now();
    auto spectra = collect_spectra(config, options);

    const unsigned k_max = config.k_max;
    const double reps = static_cast<double>(config.replicates);
    std::vector<std::vector<double>> per_replicate;
    per_replicate.reserve(spectra.size());
    for (const auto& s : spectra) {
        per_replicate.push_back(linalg::power_moments(s.eigenvalues, k_max));
    }

    auto y = moments::AspectRatio::from_dims(config.m, config.n);
    auto h_finite = models::h_finite(config.model, config.m, k_max);
    auto h_limit = models::h_limit(config.model, k_max);

    MomentReport report;
    report.config = config;
    for (unsigned k = 1; k <= k_max; ++k) {
        MomentRow row;
        row.k = k;
        double sum = 0.0;
        for (const auto& moments : per_replicate) {
            sum += moments[k - 1];
        }
        row.empirical_mean = sum / reps;
        if (config.replicates > 1) {
            double ss = 0.0;
            for (const auto& moments : per_replicate) {
                double d = moments[k - 1] - row.empirical_mean;
                ss += d * d;
            }
            row.empirical_stderr = std::sqrt(ss / (reps - 1.0) / reps);
        }
        row.predicted_finite = moments::limiting_moment(k, y, h_finite);
        if (h_limit) {
            row.predicted_limit = moments::limiting_moment(k, y, *h_limit);
        }
        report.moments.push_back(row);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Histogram histogram(std::span<const double> values, std::size_t bins,
                    std::optional<std::pair<double, double>> range)
{
    if (bins == 0) {
        throw DomainError("histogram needs at least one bin");
    }
    double lo = 0.0;
    double hi = 0.0;
    if (range) {
        std::tie(lo, hi) = *range;
    } else if (!values.empty()) {
        hi = 1.05 * *std::max_element(values.begin(), values.end());
    }
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("histogram range is empty");
    }
    Histogram out;
    out.lo = lo;
    out.hi = hi;
    out.total = values.size();
    const double width = (hi - lo) / static_cast<double>(bins);
    out.bins.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out.bins[b].lo = lo + width * static_cast<double>(b);
        out.bins[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    }
    for (double v : values) {
        if (v < lo || v > hi) {
            ++out.out_of_range;
            continue;
        }
        auto b = static_cast<std::size_t>((v - lo) / width);
        b = std::min(b, bins - 1);
        ++out.bins[b].count;
    }
    for (auto& bin : out.bins) {
        bin.density = out.total == 0
                          ? 0.0
                          : static_cast<double>(bin.count) / (static_cast<double>(out.total) * width);
    }
    return out;
}

Histogram eigenvalue_histogram(const SimConfig& config, std::size_t bins,
                               std::optional<std::pair<double, double>> range,
                               const RunOptions& options)
{
    std::vector<double> pooled;
    for (const auto& s : collect_spectra(config, options)) {
        pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    }
    return histogram(pooled, bins, range);
}

}  // namespace rmtlaw::sim

#include "rmtlaw/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rmtlaw/error.hpp"
#include "rmtlaw/linalg.hpp"

namespace rmtlaw::models {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void validate_chain(const FiniteMarkovChain& chain)
{
    const auto n = chain.states.size();
    if (n < 2) {
        throw DomainError("a finite chain needs at least two states");
    }
    if (static_cast<std::size_t>(chain.transition.rows()) != n ||
        static_cast<std::size_t>(chain.transition.cols()) != n || chain.stationary.size() != n) {
        throw DomainError("chain states, transition and stationary sizes disagree");
    }
    for (std::size_t a = 0; a < n; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            double p = chain.transition(a, b);
            if (!(p >= 0.0) || p > 1.0) {
                throw DomainError("transition probabilities must lie in [0, 1]");
            }
            row += p;
        }
        if (std::abs(row - 1.0) > 1e-12) {
            throw DomainError("transition row " + std::to_string(a) + " does not sum to 1");
        }
    }
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        if (!(chain.stationary[a] >= 0.0)) {
            throw DomainError("stationary probabilities must be nonnegative");
        }
        total += chain.stationary[a];
        mean += chain.stationary[a] * chain.states[a];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("stationary vector does not sum to 1");
    }
    for (std::size_t b = 0; b < n; ++b) {
        double flow = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            flow += chain.stationary[a] * chain.transition(a, b);
        }
        if (std::abs(flow - chain.stationary[b]) > 1e-10) {
            throw DomainError("stationary vector is not invariant under the transition matrix");
        }
    }
    if (std::abs(mean) > 1e-12) {
        throw DomainError("chain must have zero stationary mean");
    }
}

// R(0), ..., R(count - 1).
std::vector<double> autocovariances(const StationaryModel& model, std::size_t count)
{
    std::vector<double> r(count, 0.0);
    std::visit(overloaded{
                   [&](const IidSymmetric& m) {
                       if (count > 0) {
                           r[0] = m.variance;
                       }
                   },
                   [&](const GaussianAr1& m) {
                       double v = 1.0;
                       for (auto& x : r) {
                           x = v;
                           v *= m.p;
                       }
                   },
                   [&](const TwoStateChain& m) {
                       double v = 1.0;
                       for (auto& x : r) {
                           x = v;
                           v *= m.alpha;
                       }
                   },
                   [&](const FiniteMarkovChain& m) {
                       const auto n = m.states.size();
                       Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(m.states.data(),
                                                                             static_cast<Eigen::Index>(n));
                       Eigen::VectorXd weights(n);
                       for (std::size_t a = 0; a < n; ++a) {
                           weights[a] = m.stationary[a] * m.states[a];
                       }
                       // v = P^j s, so R(j) = sum_a pi_a s_a v_a.
                       Eigen::VectorXd v = s;
                       for (auto& x : r) {
                           x = weights.dot(v);
                           v = m.transition * v;
                       }
                   },
               },
               model);
    return r;
}

double geometric_rate(const StationaryModel& model)
{
    return std::visit(overloaded{
                          [](const IidSymmetric&) -> double { return 0.0; },
                          [](const GaussianAr1& m) -> double { return m.p; },
                          [](const TwoStateChain& m) -> double { return m.alpha; },
                          [](const FiniteMarkovChain&) -> double {
                              throw UnsupportedError(
                                  "spectral density is only available for i.i.d., AR(1) and "
                                  "two-state models");
                          },
                      },
                      model);
}

double parse_double(std::string_view key, std::string_view value)
{
    double out = 0.0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) {
        throw ParseError("invalid number '" + std::string(value) + "' for " + std::string(key));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_params(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> out;
    if (text.empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item =
            text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("expected key=value, got '" + std::string(item) + "'");
        }
        out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

}  // namespace

void validate(const StationaryModel& model)
{
    std::visit(overloaded{
                   [](const IidSymmetric& m) {
                       if (!(m.variance > 0.0) || !std::isfinite(m.variance)) {
                           throw DomainError("i.i.d. variance must be positive and finite");
                       }
                   },
                   [](const GaussianAr1& m) {
                       if (!(std::abs(m.p) < 1.0)) {
                           throw DomainError("AR(1) coefficient must satisfy |p| < 1");
                       }
                   },
                   [](const TwoStateChain& m) {
                       if (!(std::abs(m.alpha) < 1.0)) {
                           throw DomainError("two-state alpha must satisfy |alpha| < 1");
                       }
                   },
                   [](const FiniteMarkovChain& m) { validate_chain(m); },
               },
               model);
}

StationaryModel parse_model(std::string_view text)
{
    std::size_t colon = text.find(':');
    std::string kind(text.substr(0, colon));
    auto params = parse_params(colon == std::string_view::npos ? std::string_view{}
                                                               : text.substr(colon + 1));
    auto unknown = [&](const std::string& key) {
        return ParseError("unknown parameter '" + key + "' for model '" + kind + "'");
    };

    StationaryModel model;
    if (kind == "iid") {
        IidSymmetric m;
        for (const auto& [key, value] : params) {
            if (key == "dist") {
                if (value == "rademacher") {
                    m.distribution = IidDistribution::rademacher;
                } else if (value == "gaussian") {
                    m.distribution = IidDistribution::gaussian;
                } else {
                    throw ParseError("unknown i.i.d. distribution '" + value + "'");
                }
            } else if (key == "var") {
                m.variance = parse_double(key, value);
            } else {
                throw unknown(key);
            }
        }
        model = m;
    } else if (kind == "ar1") {
        std::optional<double> p;
        for (const auto& [key, value] : params) {
            if (key != "p") {
                throw unknown(key);
            }
            p = parse_double(key, value);
        }
        if (!p) {
            throw ParseError("ar1 model needs p=VALUE");
        }
        model = GaussianAr1{*p};
    } else if (kind == "twostate") {
        std::optional<double> alpha;
        for (const auto& [key, value] : params) {
            if (key != "alpha") {
                throw unknown(key);
            }
            alpha = parse_double(key, value);
        }
        if (!alpha) {
            throw ParseError("twostate model needs alpha=VALUE");
        }
        model = TwoStateChain{*alpha};
    } else if (kind == "chain") {
        std::optional<std::string> file;
        for (const auto& [key, value] : params) {
            if (key != "file") {
                throw unknown(key);
            }
            file = value;
        }
        if (!file) {
            throw ParseError("chain model needs file=PATH");
        }
        model = load_chain(*file);
    } else {
        throw ParseError("unknown model kind '" + kind + "'");
    }
    validate(model);
    return model;
}

FiniteMarkovChain parse_chain_json(std::string_view json_text)
{
    FiniteMarkovChain chain;
    try {
        auto doc = nlohmann::json::parse(json_text);
        chain.states = doc.at("states").get<std::vector<double>>();
        chain.stationary = doc.at("stationary").get<std::vector<double>>();
        auto rows = doc.at("transition").get<std::vector<std::vector<double>>>();
        const auto n = static_cast<Eigen::Index>(rows.size());
        chain.transition.resize(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            if (static_cast<Eigen::Index>(rows[a].size()) != n) {
                throw ParseError("transition matrix must be square");
            }
            for (Eigen::Index b = 0; b < n; ++b) {
                chain.transition(a, b) = rows[a][b];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid chain document: ") + e.what());
    }
    validate_chain(chain);
    return chain;
}

FiniteMarkovChain load_chain(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open chain file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto chain = parse_chain_json(buffer.str());
    chain.source = path;
    return chain;
}

std::string to_string(const StationaryModel& model)
{
    return std::visit(
        overloaded{
            [](const IidSymmetric& m) {
                return std::string("iid:dist=") +
                       (m.distribution == IidDistribution::rademacher ? "rademacher" : "gaussian") +
                       ",var=" + format_number(m.variance);
            },
            [](const GaussianAr1& m) { return "ar1:p=" + format_number(m.p); },
            [](const TwoStateChain& m) { return "twostate:alpha=" + format_number(m.alpha); },
            [](const FiniteMarkovChain& m) {
                return m.source.empty() ? std::string("chain:inline") : "chain:file=" + m.source;
            },
        },
        model);
}

FiniteMarkovChain as_finite_chain(const TwoStateChain& chain)
{
    validate(chain);
    double stay = (1.0 + chain.alpha) / 2.0;
    FiniteMarkovChain out;
    out.states = {1.0, -1.0};
    out.stationary = {0.5, 0.5};
    out.transition.resize(2, 2);
    out.transition << stay, 1.0 - stay, 1.0 - stay, stay;
    return out;
}

double decay_rate(const StationaryModel& model)
{
    return std::visit(overloaded{
                          [](const IidSymmetric&) { return 0.0; },
                          [](const GaussianAr1& m) { return std::abs(m.p); },
                          [](const TwoStateChain& m) { return std::abs(m.alpha); },
                          [](const FiniteMarkovChain& m) {
                              Eigen::EigenSolver<Eigen::MatrixXd> solver(m.transition, false);
                              if (solver.info() != Eigen::Success) {
                                  throw NumericError("eigensolver failed on transition matrix");
                              }
                              std::vector<double> moduli;
                              for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
                                  moduli.push_back(std::abs(solver.eigenvalues()[i]));
                              }
                              std::sort(moduli.begin(), moduli.end(), std::greater<>());
                              return moduli.size() > 1 ? moduli[1] : 0.0;
                          },
                      },
                      model);
}

CovarianceSpec::CovarianceSpec(StationaryModel model) : model_(std::move(model))
{
    validate(model_);
    rate_ = models::decay_rate(model_);
}

double CovarianceSpec::autocovariance(std::size_t lag) const
{
    if (const auto* chain = std::get_if<FiniteMarkovChain>(&model_)) {
        return autocovariances(*chain, lag + 1).back();
    }
    return std::visit(overloaded{
                          [&](const IidSymmetric& m) { return lag == 0 ? m.variance : 0.0; },
                          [&](const GaussianAr1& m) {
                              return std::pow(m.p, static_cast<double>(lag));
                          },
                          [&](const TwoStateChain& m) {
                              return std::pow(m.alpha, static_cast<double>(lag));
                          },
                          [&](const FiniteMarkovChain&) { return 0.0; },
                      },
                      model_);
}

Eigen::MatrixXd covariance_matrix(const StationaryModel& model, std::size_t m)
{
    validate(model);
    if (m == 0) {
        throw DomainError("covariance_matrix needs m >= 1");
    }
    auto r = autocovariances(model, m);
    const auto size = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd t(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            t(i, j) = r[static_cast<std::size_t>(i > j ? i - j : j - i)];
        }
    }
    return t;
}

moments::HSequence h_finite(const StationaryModel& model, std::size_t m, unsigned k_max)
{
    if (k_max == 0 || k_max > moments::default_max_order) {
        throw BoundError("h_finite requires 1 <= k_max <= 20");
    }
    auto t = covariance_matrix(model, m);
    auto eigenvalues = linalg::symmetric_eigenvalues(t);
    moments::HSequence h;
    h.values = linalg::power_moments(eigenvalues, k_max);
    // The first moment is the mean diagonal entry; take it from the matrix
    // so it equals R(0) without eigensolver roundoff.
    h.values[0] = t.diagonal().sum() / static_cast<double>(m);
    h.origin = moments::SequenceOrigin::finite_trace;
    h.trace_dimension = m;
    return h;
}

double spectral_density(const StationaryModel& model, double x)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("spectral density argument must lie in [0, 1]");
    }
    validate(model);
    if (const auto* iid = std::get_if<IidSymmetric>(&model)) {
        return iid->variance;
    }
    double rho = geometric_rate(model);
    // Poisson kernel: sum_j rho^{|j|} e^{2 pi i j x}.
    return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(2.0 * std::numbers::pi * x) + rho * rho);
}

moments::HSequence h_szego(const StationaryModel& model, unsigned k_max)
{
    if (k_max == 0 || k_max > moments::default_max_order) {
        throw BoundError("h_szego requires 1 <= k_max <= 20");
    }
    validate(model);
    double rho = geometric_rate(model);
    if (std::abs(rho) > max_szego_rate) {
        throw DomainError("Szego quadrature refuses decay rates above 0.95");
    }
    const std::size_t panels = szego_panels;
    const double width = 1.0 / static_cast<double>(panels);
    std::vector<double> sums(k_max, 0.0);
    for (std::size_t i = 0; i <= panels; ++i) {
        double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        double f = spectral_density(model, static_cast<double>(i) * width);
        double power = 1.0;
        for (unsigned k = 0; k < k_max; ++k) {
            power *= f;
            sums[k] += weight * power;
        }
    }
    moments::HSequence h;
    h.values.resize(k_max);
    for (unsigned k = 0; k < k_max; ++k) {
        h.values[k] = sums[k] * width / 3.0;
    }
    h.origin = moments::SequenceOrigin::szego_quadrature;
    return h;
}

std::optional<moments::HSequence> h_limit(const StationaryModel& model, unsigned k_max)
{
    if (const auto* iid = std::get_if<IidSymmetric>(&model)) {
        moments::HSequence h;
        h.origin = moments::SequenceOrigin::closed_form;
        double v = 1.0;
        for (unsigned k = 0; k < k_max; ++k) {
            v *= iid->variance;
            h.values.push_back(v);
        }
        return h;
    }
    if (std::holds_alternative<FiniteMarkovChain>(model) ||
        std::abs(geometric_rate(model)) > max_szego_rate) {
        return std::nullopt;
    }
    return h_szego(model, k_max);
}

void sample_path(const StationaryModel& model, std::span<double> out, RngStream& stream)
{
    if (out.empty()) {
        return;
    }
    std::visit(overloaded{
                   [&](const IidSymmetric& m) {
                       double scale = std::sqrt(m.variance);
                       for (auto& x : out) {
                           if (m.distribution == IidDistribution::rademacher) {
                               x = (stream.next_u64() >> 63) ? scale : -scale;
                           } else {
                               x = scale * stream.normal();
                           }
                       }
                   },
                   [&](const GaussianAr1& m) {
                       double innovation = std::sqrt(1.0 - m.p * m.p);
                       out[0] = stream.normal();
                       for (std::size_t i = 1; i < out.size(); ++i) {
                           out[i] = m.p * out[i - 1] + innovation * stream.normal();
                       }
                   },
                   [&](const TwoStateChain& m) {
                       double flip = (1.0 - m.alpha) / 2.0;
                       out[0] = stream.uniform() < 0.5 ? 1.0 : -1.0;
                       for (std::size_t i = 1; i < out.size(); ++i) {
                           out[i] = stream.uniform() < flip ? -out[i - 1] : out[i - 1];
                       }
                   },
                   [&](const FiniteMarkovChain& m) {
                       const auto n = m.states.size();
                       auto draw = [&](auto&& probability) {
                           double u = stream.uniform();
                           double acc = 0.0;
                           for (std::size_t b = 0; b + 1 < n; ++b) {
                               acc += probability(b);
                               if (u < acc) {
                                   return b;
                               }
                           }
                           return n - 1;
                       };
                       std::size_t state = draw([&](std::size_t b) { return m.stationary[b]; });
                       out[0] = m.states[state];
                       for (std::size_t i = 1; i < out.size(); ++i) {
                           std::size_t from = state;
                           state = draw([&](std::size_t b) {
                               return m.transition(static_cast<Eigen::Index>(from),
                                                   static_cast<Eigen::Index>(b));
                           });
                           out[i] = m.states[state];
                       }
                   },
               },
               model);
}

std::vector<double> sample_path(const StationaryModel& model, std::size_t m, RngStream& stream)
{
    validate(model);
    std::vector<double> out(m);
    sample_path(model, out, stream);
    return out;
}

}  // namespace rmtlaw::models

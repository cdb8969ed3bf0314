#include "rmtlaw/linalg.hpp"

#include "rmtlaw/error.hpp"

namespace rmtlaw::linalg {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a)
{
    if (a.rows() != a.cols()) {
        throw DomainError("symmetric_eigenvalues needs a square matrix");
    }
    if (a.rows() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("symmetric eigensolver did not converge");
    }
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

std::vector<double> power_moments(std::span<const double> eigenvalues, unsigned k_max)
{
    std::vector<double> out(k_max, 0.0);
    if (eigenvalues.empty()) {
        return out;
    }
    for (double lambda : eigenvalues) {
        double power = 1.0;
        for (unsigned k = 0; k < k_max; ++k) {
            power *= lambda;
            out[k] += power;
        }
    }
    for (auto& v : out) {
        v /= static_cast<double>(eigenvalues.size());
    }
    return out;
}

}  // namespace rmtlaw::linalg

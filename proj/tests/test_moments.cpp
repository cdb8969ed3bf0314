#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rmtlaw/error.hpp"
#include "rmtlaw/moments.hpp"

using namespace rmtlaw;
using namespace rmtlaw::moments;

namespace {

HSequence seq(std::vector<double> v)
{
    return HSequence{std::move(v), SequenceOrigin::user, 0};
}

QSequence qseq(std::vector<double> v)
{
    return QSequence{std::move(v), SequenceOrigin::user};
}

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("aspect ratio")
{
    CHECK(AspectRatio(0.5).value() == 0.5);
    CHECK_FALSE(AspectRatio(0.5).m().has_value());
    auto r = AspectRatio::from_dims(150, 300);
    CHECK(r.value() == 0.5);
    CHECK(*r.m() == 150);
    CHECK(*r.n() == 300);
    CHECK_THROWS_AS(AspectRatio(0.0), DomainError);
    CHECK_THROWS_AS(AspectRatio(-1.0), DomainError);
    CHECK_THROWS_AS(AspectRatio(NAN), DomainError);
    CHECK_THROWS_AS(AspectRatio::from_dims(0, 3), DomainError);
    CHECK(to_string(SequenceOrigin::finite_trace) == "finite-trace");
    CHECK(to_string(SequenceOrigin::szego_quadrature) == "szego-quadrature");
}

TEST_CASE("limiting_moment: low orders by hand")
{
    auto h = seq({1.3, 2.1, 0.7, 4.0});
    AspectRatio y(0.37);
    CHECK(limiting_moment(1, y, h) == doctest::Approx(1.3));
    CHECK(limiting_moment(2, y, h) == doctest::Approx(2.1 + 0.37 * 1.3 * 1.3));
    CHECK(limiting_moment(3, y, h) ==
          doctest::Approx(0.7 + 3 * 0.37 * 1.3 * 2.1 + 0.37 * 0.37 * std::pow(1.3, 3)));
    CHECK_THROWS_AS(limiting_moment(5, y, h), DomainError);
    CHECK_THROWS_AS(limiting_moment(0, y, h), DomainError);
    CHECK_THROWS_AS(limiting_moment(21, y, seq(std::vector<double>(21, 1.0))), BoundError);
    MomentOptions wide{25};
    CHECK(std::isfinite(limiting_moment(21, y, seq(std::vector<double>(21, 1.0)), wide)));
}

TEST_CASE("Marchenko-Pastur special case")
{
    CHECK(mp_moment(1, AspectRatio(3.0), 2.0) == 2.0);
    CHECK(mp_moment(4, AspectRatio(1.0), 1.0) == 14.0);
    CHECK(mp_moment(2, AspectRatio(0.5), 1.0) == 1.5);
    CHECK_THROWS_AS(mp_moment(2, AspectRatio(0.5), -1.0), DomainError);
    for (double sigma2 : {0.5, 1.0, 2.5}) {
        for (double yv : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            for (unsigned k = 1; k <= 10; ++k) {
                std::vector<double> h;
                for (unsigned l = 1; l <= k; ++l) {
                    h.push_back(std::pow(sigma2, l));
                }
                CHECK(close(limiting_moment(k, AspectRatio(yv), seq(h)),
                            mp_moment(k, AspectRatio(yv), sigma2), 1e-12));
            }
        }
    }
}

TEST_CASE("exact polynomial mode")
{
    for (unsigned k = 1; k <= 10; ++k) {
        std::vector<std::int64_t> ones(k, 1);
        auto coeffs = exact_moment_polynomial(k, ones);
        REQUIRE(coeffs.size() == k);
        // Brute-force tally of NC(k) by block count.
        std::vector<nc::BigSigned> expected(k, 0);
        for (const auto& b : oracle::all_partitions(k)) {
            if (!oracle::crosses(b, k)) {
                expected[b.size() - 1] += 1;
            }
        }
        CHECK(coeffs == expected);
        auto at2 = evaluate_exact(coeffs, 2, 1);
        nc::BigSigned direct = 0;
        nc::BigSigned power = 1;
        for (unsigned j = 0; j < k; ++j) {
            direct += expected[j] * power;
            power *= 2;
        }
        CHECK(at2.numerator == direct);
        CHECK(at2.denominator == 1);
    }
    std::vector<std::int64_t> h{2, -3, 5};
    auto c = exact_moment_polynomial(3, h);
    // H3 + 3 y H1 H2 + y^2 H1^3
    CHECK(c == std::vector<nc::BigSigned>{5, -18, 8});
    auto half = evaluate_exact(c, 1, 2);
    CHECK(half.numerator == 5 * 4 - 18 * 2 + 8);
    CHECK(half.denominator == 4);
    CHECK_THROWS_AS(evaluate_exact(c, 1, 0), DomainError);
}

TEST_CASE("limiting_moment agrees with the non-crossing sum")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    const double ys[] = {0.25, 1.0, 4.0};
    for (unsigned k = 1; k <= 9; ++k) {
        for (int draw = 0; draw < 20; ++draw) {
            std::vector<double> h(k);
            for (auto& v : h) {
                v = unif(gen);
            }
            double yv = ys[draw % 3];
            double a = limiting_moment(k, AspectRatio(yv), seq(h));
            double b = limiting_moment_via_nc(k, AspectRatio(yv), seq(h));
            CHECK(close(a, b, 1e-10));
            if (k <= 7) {
                CHECK(close(a, oracle::nc_sum(k, yv, h), 1e-10));
            }
        }
    }
    CHECK(limiting_moment_via_nc(3, AspectRatio(1.0), seq({1, 1, 1})) == 5.0);
    CHECK_THROWS_AS(limiting_moment_via_nc(11, AspectRatio(1.0), seq(std::vector<double>(11, 1.0))),
                    BoundError);
}

TEST_CASE("monotone in y and homogeneous under scaling")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int draw = 0; draw < 30; ++draw) {
        std::vector<double> h(8);
        for (auto& v : h) {
            v = unif(gen);
        }
        double c = 0.2 + unif(gen);
        std::vector<double> scaled(h);
        for (unsigned l = 0; l < 8; ++l) {
            scaled[l] *= std::pow(c, l + 1);
        }
        for (unsigned k = 1; k <= 8; ++k) {
            double prev = -1.0;
            for (double yv : {0.1, 0.5, 1.0, 2.0, 8.0}) {
                double v = limiting_moment(k, AspectRatio(yv), seq(h));
                if (k >= 2) {
                    CHECK(v >= prev);
                }
                prev = v;
                CHECK(close(limiting_moment(k, AspectRatio(yv), seq(scaled)), std::pow(c, k) * v,
                            1e-10));
            }
        }
    }
}

TEST_CASE("quadratic-form moment")
{
    auto h = seq({1.5, 2.0, 3.0});
    CHECK(qform_moment(1, AspectRatio(0.7), h, qseq({2.5})) == doctest::Approx(1.5 * 2.5));
    CHECK(qform_moment(3, AspectRatio(0.7), seq({0, 0, 0}), qseq({1, 2, 3})) == 0.0);
    CHECK_THROWS_AS(qform_moment(3, AspectRatio(0.7), h, qseq({1, 1})), DomainError);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (int draw = 0; draw < 50; ++draw) {
        std::vector<double> hv(8);
        for (auto& v : hv) {
            v = unif(gen);
        }
        double yv = 0.1 + 2.0 * unif(gen);
        for (unsigned k = 1; k <= 8; ++k) {
            CHECK(close(qform_moment(k, AspectRatio(yv), seq(hv), qseq(std::vector<double>(8, 1.0))),
                        limiting_moment(k, AspectRatio(yv), seq(hv)), 1e-10));
        }
    }

    // Q = c I scales each column's contribution: H~_l = c^l gives c^k times
    // the moment.
    for (unsigned k = 1; k <= 6; ++k) {
        std::vector<double> q;
        for (unsigned l = 1; l <= k; ++l) {
            q.push_back(std::pow(1.7, l));
        }
        CHECK(close(qform_moment(k, AspectRatio(0.4), seq({1.1, 1.9, 3.2, 6.0, 11.0, 21.0}), qseq(q)),
                    std::pow(1.7, k) *
                        limiting_moment(k, AspectRatio(0.4), seq({1.1, 1.9, 3.2, 6.0, 11.0, 21.0})),
                    1e-10));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "xygibbs/measure.hpp"

using namespace xygibbs;

namespace {
const PotentialFamily kZero = PotentialFamily::zero();
const PotentialFamily kEx1 = PotentialFamily::example1();
const PotentialFamily kPoly3 = PotentialFamily::polylog(3.0);

double ex1_F(double a) { return 1.0 + 1.0 / (a * a - 1.0); }
}  // namespace

TEST_CASE("cylinder mass basics") {
    const MarginalSpec uz = MarginalSpec::tilde(kZero, 1.0);
    const Cylinder quarter({Interval(0.0, 0.5), Interval(0.0, 0.5)});
    CHECK(cylinder_mass(uz, quarter) ==
          doctest::Approx(std::log(0.25)).epsilon(1e-10));

    const MarginalSpec flat = MarginalSpec::tilde(kEx1, 0.0);
    CHECK(std::abs(cylinder_mass(flat, Cylinder({kEx1.domain()}))) <= 1e-10);

    // two-quadrature oracle at beta = 100
    const double beta = 100.0;
    const auto num = oracles::simpson(
        [&](double a) { return std::exp(beta * (ex1_F(a) - 0.0)); }, -0.1, 0.1,
        20000);
    const auto den = oracles::simpson(
        [&](double a) { return std::exp(beta * (ex1_F(a) - 0.0)); }, -0.5, 0.5,
        20000);
    const MarginalSpec spec = MarginalSpec::tilde(kEx1, beta);
    CHECK(cylinder_mass(spec, Cylinder({Interval(-0.1, 0.1)})) ==
          doctest::Approx(std::log(num / den)).epsilon(1e-8));

    CHECK_THROWS_AS(cylinder_mass(spec, Cylinder({Interval(0.4, 0.7)})),
                    DomainError);
}

TEST_CASE("cylinder masses add over boxes and partitions") {
    const MarginalSpec spec = MarginalSpec::tilde(kEx1, 3.0);
    const Cylinder d1({Interval(-0.4, 0.1)});
    const Cylinder d2({Interval(0.2, 0.45)});
    const Cylinder both({Interval(-0.4, 0.1), Interval(0.2, 0.45)});
    CHECK(cylinder_mass(spec, both) ==
          cylinder_mass(spec, d1) + cylinder_mass(spec, d2));

    // re-partitioning one box changes the quadrature but not the value
    const double whole = cylinder_mass(spec, Cylinder({Interval(-0.4, 0.4)}));
    const double split =
        std::log(std::exp(cylinder_mass(spec, Cylinder({Interval(-0.4, 0.05)}))) +
                 std::exp(cylinder_mass(spec, Cylinder({Interval(0.05, 0.4)}))));
    CHECK(whole == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("marginal relation residual") {
    CHECK(marginal_relation_residual(kZero, 1.0, 1, std::vector<double>{0.3}) ==
          0.0);
    CHECK(marginal_relation_residual(kEx1, 1.0, 1, std::vector<double>{0.25}) <=
          1e-10);
    CHECK(marginal_relation_residual(kEx1, 2.0, 3, std::vector<double>{-0.4}) <=
          1e-10);
    const std::vector<double> probes = {-0.9, -0.3, 0.2, 0.7, 1.0};
    CHECK(marginal_relation_residual(kPoly3, 1.5, 2, probes) <= 1e-10);
}

TEST_CASE("sampling: uniform cases") {
    const MarginalSpec uz = MarginalSpec::tilde(kZero, 5.0);  // density is 1
    const auto draws = sample_marginal(uz, 42, 100000);
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= draws.size();
    CHECK(std::abs(mean - 0.5) <= 0.005);

    // Kolmogorov-Smirnov against the uniform CDF at beta = 0
    const MarginalSpec flat = MarginalSpec::tilde(kEx1, 0.0);
    auto xs = sample_marginal(flat, 43, 100000);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = (xs[i] + 0.5);  // uniform CDF on [-1/2, 1/2]
        const double hi = static_cast<double>(i + 1) / xs.size();
        const double lo = static_cast<double>(i) / xs.size();
        ks = std::max({ks, std::abs(u - hi), std::abs(u - lo)});
    }
    CHECK(ks <= 0.01);
}

TEST_CASE("sampling concentrates at the maximum for large beta") {
    const MarginalSpec spec = MarginalSpec::tilde(kEx1, 1000.0);
    const auto draws = sample_marginal(spec, 7, 100000);
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= draws.size();
    CHECK(std::abs(mean) <= 0.01);
}

TEST_CASE("sampling is deterministic in the seed") {
    const MarginalSpec spec = MarginalSpec::tilde(kEx1, 2.0);
    const auto a = sample_marginal(spec, 1234, 1000);
    const auto b = sample_marginal(spec, 1234, 1000);
    CHECK(a == b);
    const auto c = sample_marginal(spec, 1235, 1000);
    CHECK(a != c);
}

TEST_CASE("entropy explicit values") {
    for (double beta : {0.0, 1.0, 10.0})
        CHECK(std::abs(entropy(kZero, beta)) <= 1e-12);

    // beta = 0: differential entropy of the uniform density, log(hi - lo)
    CHECK(entropy(kPoly3, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(std::abs(entropy(kEx1, 0.0)) <= 1e-10);  // log 1

    // beta = 1 cross-check against an independent Simpson oracle
    const double lambda1 = oracles::simpson(
        [](double a) { return std::exp(ex1_F(a)); }, -0.5, 0.5, 20000);
    const double meanF = oracles::simpson(
        [](double a) { return ex1_F(a) * std::exp(ex1_F(a)); }, -0.5, 0.5, 20000) /
        lambda1;
    CHECK(entropy(kEx1, 1.0) ==
          doctest::Approx(std::log(lambda1) - meanF).epsilon(1e-8));
    CHECK(entropy(kEx1, 1.0) ==
          doctest::Approx(-0.00426993190419052458).epsilon(1e-8));
}

TEST_CASE("mean_f values") {
    CHECK(mean_f(kZero, 3.0) == 0.0);
    // beta = 0: plain average of F over the domain, 1 - log 3
    CHECK(mean_f(kEx1, 0.0) ==
          doctest::Approx(-0.0986122886681096914).epsilon(1e-10));
    CHECK(mean_f(kEx1, 1.0) ==
          doctest::Approx(-0.0899508452738337004).epsilon(1e-9));
    // large beta: the mean approaches m(f) = F(0) = 0
    CHECK(std::abs(mean_f(kEx1, 1000.0)) <= 0.01);
}

TEST_CASE("variational identity holds across families and betas") {
    const PotentialFamily well =
        PotentialFamily::single({-0.125, 0.0625, 1.0, -0.5, -2.0, 1.0});
    for (const auto& fam : {kZero, kEx1, kPoly3, well}) {
        for (double beta : {0.0, 0.5, 1.0, 10.0}) {
            CHECK(variational_residual(fam, beta) <= 1e-8);
        }
    }
}

TEST_CASE("entropy stays below the uniform bound; mean_f is nondecreasing") {
    const double bound = std::log(kEx1.domain().width());
    double prev_mean = -1e300;
    for (double beta : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
        CHECK(entropy(kEx1, beta) <= bound + 1e-8);
        const double m = mean_f(kEx1, beta);
        CHECK(m >= prev_mean - 1e-8);
        prev_mean = m;
    }
}

TEST_CASE("plain marginal density matches its definition") {
    const MarginalSpec mu2 = MarginalSpec::plain(kEx1, 1.5, 2);
    const double a = 0.3;
    const double expected =
        1.5 * (kEx1.factor(1, a) + kEx1.factor(2, a)) -
        mu2.eigen().log_lambda;
    CHECK(mu2.log_density(a) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(cylinder_mass(mu2, Cylinder({Interval(-0.1, 0.1)})),
                    DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pnet/outage.hpp"

using namespace pnet;

namespace {

LinkConfig make_link(double lambda, double wp, double alpha, int m, double theta, double d,
                     const char* pathloss = "singular") {
    LinkConfig link;
    link.net.lambda = lambda;
    link.net.wp = wp;
    link.net.pathloss = PathLossModel::parse(pathloss, alpha);
    link.net.fading =
        FadingModel::parse(m == 1 ? "rayleigh" : "nakagami:" + std::to_string(m));
    link.m = m;
    link.theta = theta;
    link.d = d;
    return link;
}

}  // namespace

TEST_CASE("m = 1 reduces to the Rayleigh pgfl closed form") {
    for (double alpha : {2.5, 3.0, 4.0, 5.0})
        for (double lambda : {0.05, 0.1, 0.2})
            for (double wp : {0.5, 1.0}) {
                LinkConfig link = make_link(lambda, wp, alpha, 1, 0.7, 1.3);
                double delta = 2.0 / alpha;
                double th = link.theta_hat();
                double ref = std::exp(-wp * lambda * M_PI * M_PI * delta *
                                      std::pow(th, delta) / std::sin(M_PI * delta));
                CHECK(success_probability(link) == doctest::Approx(ref).epsilon(1e-9));
                CHECK(success_probability_singular(link) == doctest::Approx(ref).epsilon(1e-12));
            }
}

TEST_CASE("quadrature and singular closed forms agree for m up to 5") {
    for (int m : {2, 3, 5})
        for (double alpha : {2.5, 3.0, 4.0}) {
            LinkConfig link = make_link(0.02, 1.0, alpha, m, 0.5, 2.0);
            CHECK(success_probability(link) ==
                  doctest::Approx(success_probability_singular(link)).epsilon(1e-7));
            CHECK(joint_success_probability(link) ==
                  doctest::Approx(joint_success_probability_singular(link)).epsilon(1e-7));
        }
}

TEST_CASE("joint closed form also covers the thinned case only via quadrature") {
    LinkConfig link = make_link(0.02, 0.6, 4.0, 3, 0.5, 2.0);
    CHECK_THROWS_AS(joint_success_probability_singular(link), std::invalid_argument);
    double j = joint_success_probability(link);
    double p = success_probability(link);
    CHECK(j >= p * p);  // positive correlation survives thinning
    CHECK(j <= p);
}

TEST_CASE("success tends to 1 as lambda vanishes") {
    LinkConfig link = make_link(1e-9, 1.0, 4.0, 3, 0.5, 2.0);
    CHECK(success_probability(link) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(joint_success_probability(link) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("large alpha limit: outage approaches 1 - exp(-lambda pi d^2)") {
    // with d = 4^{1/alpha} and lambda = 0.01 the limit is 1 - exp(-0.01 pi)
    const double alpha = 50.0;
    LinkConfig link = make_link(0.01, 1.0, alpha, 1, 0.5, std::pow(4.0, 1.0 / alpha));
    double outage = 1.0 - success_probability_singular(link);
    double limit = -std::expm1(-0.01 * M_PI);
    CHECK(limit == doctest::Approx(0.0309276).epsilon(1e-5));
    CHECK(std::fabs(outage - limit) < 1e-3);
}

TEST_CASE("probability bounds and Frechet consistency over a sweep grid") {
    for (int m : {1, 2, 3, 4, 5})
        for (double alpha : {2.2, 3.0, 4.5, 6.0})
            for (double theta : {0.1, 0.5, 1.0})
                for (double lambda : {1e-4, 0.01, 0.1}) {
                    LinkConfig link = make_link(lambda, 1.0, alpha, m, theta, 2.0);
                    OutageSummary s = outage_summary(link);
                    for (double v : {s.p_success, s.p_joint, s.p_joint_outage, s.p_at_least_one,
                                     s.p_indep_square, s.p_indep_diversity}) {
                        CHECK(v >= 0.0);
                        CHECK(v <= 1.0);
                    }
                    CHECK(s.p_joint >= std::max(0.0, 2.0 * s.p_success - 1.0) - 1e-12);
                    CHECK(s.p_joint <= s.p_success + 1e-12);
                    CHECK(s.p_joint >= s.p_indep_square - 1e-12);
                    CHECK(s.p_at_least_one <= s.p_indep_diversity + 1e-12);
                }
}

TEST_CASE("success probability is strictly decreasing in lambda and theta") {
    double prev = 1.0;
    for (double lambda : {0.001, 0.01, 0.05, 0.1}) {
        double p = success_probability_singular(make_link(lambda, 1.0, 4.0, 3, 0.5, 2.0));
        CHECK(p < prev);
        prev = p;
    }
    prev = 1.0;
    for (double theta : {0.1, 0.5, 1.0, 2.0}) {
        double p = success_probability_singular(make_link(0.02, 1.0, 4.0, 3, theta, 2.0));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("joint outage of two transmissions beats a single one") {
    for (double lambda : {0.005, 0.015, 0.03}) {
        LinkConfig link = make_link(lambda, 1.0, 4.0, 3, 0.5, 2.0);
        OutageSummary s = outage_summary(link);
        CHECK(s.p_joint_outage <= 1.0 - s.p_success + 1e-12);
    }
}

TEST_CASE("algebraic combinations are consistent") {
    LinkConfig link = make_link(0.02, 1.0, 3.0, 2, 0.5, 2.0);
    double p = success_probability(link);
    double j = joint_success_probability(link);
    CHECK(joint_outage(link) == doctest::Approx(1.0 - 2.0 * p + j).epsilon(1e-12));
    CHECK(at_least_one(link) == doctest::Approx(2.0 * p - j).epsilon(1e-12));
    auto [sq, div] = independent_baselines(link);
    CHECK(sq == doctest::Approx(p * p).epsilon(1e-12));
    CHECK(div == doctest::Approx(1.0 - (1.0 - p) * (1.0 - p)).epsilon(1e-12));
}

TEST_CASE("works for bounded path loss models too") {
    LinkConfig link = make_link(0.02, 1.0, 4.0, 2, 0.5, 2.0, "min");
    double p = success_probability(link);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    // bounded gain means more near-field interference than singular at same alpha
    LinkConfig sing = make_link(0.02, 1.0, 4.0, 2, 0.5, 2.0);
    CHECK(p != doctest::Approx(success_probability(sing)).epsilon(1e-6));
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(success_probability(make_link(0.02, 1.0, 4.0, 0, 0.5, 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_probability(make_link(0.02, 1.0, 4.0, 3, -0.5, 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_probability(make_link(0.02, 1.0, 4.0, 3, 0.5, 0.0)),
                    std::invalid_argument);
    LinkConfig mismatch = make_link(0.02, 1.0, 4.0, 3, 0.5, 2.0);
    mismatch.net.fading = FadingModel::parse("nakagami:2");
    CHECK_THROWS_AS(success_probability(mismatch), std::invalid_argument);
    LinkConfig rice = make_link(0.02, 1.0, 4.0, 1, 0.5, 2.0);
    rice.net.fading = FadingModel::parse("rice:2,1");
    CHECK_THROWS_AS(success_probability(rice), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pnet/quadrature.hpp"

using namespace pnet;

TEST_CASE("zero integrand") {
    CHECK(integrate([](double) { return 0.0; }, 0.0, 10.0) == 0.0);
    CHECK(radial_integral([](double) { return 0.0; }, 4.0) == 0.0);
}

TEST_CASE("elementary integrals") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0) ==
          doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    // linearity
    auto f = [](double x) { return x * x; };
    auto g = [](double x) { return std::exp(-x); };
    double a = integrate(f, 0.0, 3.0), b = integrate(g, 0.0, 3.0);
    double both = integrate([&](double x) { return 2.0 * f(x) - 0.5 * g(x); }, 0.0, 3.0);
    CHECK(both == doctest::Approx(2.0 * a - 0.5 * b).epsilon(1e-12));
}

TEST_CASE("planar integral of a gaussian is pi") {
    CHECK(radial_integral([](double r) { return std::exp(-r * r); }, 4.0) ==
          doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("algebraic tail: 2 pi int r/(1+r^4) dr = pi^2/2") {
    double v = radial_integral([](double r) {
        double t = std::pow(r, -4.0);
        return std::isfinite(t) ? t / (1.0 + t) : 1.0;
    }, 4.0);
    CHECK(v == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("damped bracket: 2 pi int r (t/(1+t)^2) dr = pi^2/4 for t = r^-4") {
    double v = radial_integral([](double r) {
        double t = std::pow(r, -4.0);
        if (!std::isfinite(t)) return 0.0;
        return t / ((1.0 + t) * (1.0 + t));
    }, 4.0);
    CHECK(v == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-10));
}

TEST_CASE("pure tail integrand: 2 pi int_1^inf r^{-3} dr = pi") {
    double v = radial_integral([](double r) { return r < 1.0 ? 0.0 : std::pow(r, -4.0); }, 4.0);
    CHECK(v == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("slow algebraic decay near alpha = 2 still converges") {
    // 2 pi int r (1+r)^{-2.2} dr = 2 pi / (0.2 * 1.2) (integrate by parts)
    double v = radial_integral([](double r) { return std::pow(1.0 + r, -2.2); }, 2.2);
    CHECK(v == doctest::Approx(2.0 * M_PI / (0.2 * 1.2)).epsilon(1e-8));
}

TEST_CASE("subdivision exhaustion raises an accuracy error with an estimate") {
    QuadratureSpec tight;
    tight.abs_tol = 1e-300;
    tight.rel_tol = 1e-300;
    tight.max_subdiv = 4;
    try {
        integrate([](double x) { return std::sqrt(std::fabs(std::sin(50.0 * x))); }, 0.0, 10.0,
                  tight);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(std::isfinite(e.estimate));
        CHECK(e.error_bound > 0.0);
    }
}

TEST_CASE("radial integral rejects alpha <= 2") {
    CHECK_THROWS_AS(radial_integral([](double) { return 1.0; }, 2.0), std::invalid_argument);
}

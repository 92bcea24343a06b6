#include "pnet/outage.hpp"
#include "pnet/combinatorics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace pnet {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// log Gamma(m + n) - log Gamma(m) for integer arguments
double log_poch(int m, int n) {
    return std::lgamma(double(m + n)) - std::lgamma(double(m));
}

// (theta_hat * l(r))^n / (1 + theta_hat * l(r))^(m+n), evaluated stably.
double ratio_term(double t, int n, int m) {
    if (!std::isfinite(t)) return 0.0;
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    double log_w = std::log(t) - std::log1p(t);
    return std::exp(n * log_w - m * std::log1p(t));
}

}  // namespace

void LinkConfig::validate() const {
    net.validate();
    if (net.fading.kind != FadingKind::Nakagami && net.fading.kind != FadingKind::Rayleigh)
        throw std::invalid_argument("link analysis assumes Nakagami fading on the desired link");
    if (m < 1)
        throw std::invalid_argument(
            "Nakagami parameter m must be a positive integer; the ccdf expansion "
            "used here does not extend to non-integer m");
    if (net.fading.kind == FadingKind::Nakagami && net.fading.m != double(m))
        throw std::invalid_argument("link m and network fading m disagree");
    if (net.fading.kind == FadingKind::Rayleigh && m != 1)
        throw std::invalid_argument("Rayleigh fading corresponds to m = 1");
    if (!(theta > 0)) throw std::invalid_argument("theta must be positive");
    if (!(d > 0)) throw std::invalid_argument("d must be positive");
}

double success_probability(const LinkConfig& link, const QuadratureSpec& quad) {
    link.validate();
    const double th = link.theta_hat();
    const double wp = link.net.wp;
    const double lambda = link.net.lambda;
    const int m = link.m;
    const auto& pl = link.net.pathloss;
    const double alpha = pl.alpha;

    double expo = lambda * wp * radial_integral([&](double r) {
        double t = th * pl.gain(r);
        if (!std::isfinite(t)) return 1.0;
        return -std::expm1(-m * std::log1p(t));
    }, alpha, quad);
    double prefactor = std::exp(-expo);

    // A(n) = wp * lambda * Gamma(m+n)/Gamma(m) * integral of the ratio term
    std::map<int, double> a_cache;
    auto A = [&](int n) {
        auto it = a_cache.find(n);
        if (it != a_cache.end()) return it->second;
        double integral = radial_integral([&](double r) {
            return ratio_term(th * pl.gain(r), n, m);
        }, alpha, quad);
        double v = wp * lambda * std::exp(log_poch(m, n)) * integral;
        a_cache.emplace(n, v);
        return v;
    };

    double series = 1.0;
    for (int i = 1; i <= m - 1; ++i) {
        double inner = 0.0;
        for (int l = 1; l <= i; ++l) {
            for (const auto& mat : enumerate_matrices({i}, l)) {
                double prod = double(multiplicity(mat)) / factorial(l);
                for (int j = 0; j < l; ++j) prod *= A(mat.at(0, j));
                inner += prod;
            }
        }
        series += inner / factorial(i);
    }
    return prefactor * series;
}

double success_probability_singular(const LinkConfig& link) {
    link.validate();
    if (link.net.pathloss.kind != PathLossKind::Singular)
        throw std::invalid_argument("closed form requires the singular path loss model");
    const double delta = link.net.pathloss.delta();
    const double th = link.theta_hat();
    const double wp = link.net.wp;
    const double lambda = link.net.lambda;
    const int m = link.m;

    double base = wp * lambda * M_PI * std::pow(th, delta);
    double expo = base * std::exp(std::lgamma(1 - delta) + std::lgamma(m + delta) -
                                  std::lgamma(double(m)));
    double prefactor = std::exp(-expo);

    auto A = [&](int n) {
        return base * delta *
               std::exp(std::lgamma(n - delta) + std::lgamma(m + delta) -
                        std::lgamma(double(m)));
    };

    double series = 1.0;
    for (int i = 1; i <= m - 1; ++i) {
        double inner = 0.0;
        for (int l = 1; l <= i; ++l) {
            for (const auto& mat : enumerate_matrices({i}, l)) {
                double prod = double(multiplicity(mat)) / factorial(l);
                for (int j = 0; j < l; ++j) prod *= A(mat.at(0, j));
                inner += prod;
            }
        }
        series += inner / factorial(i);
    }
    return prefactor * series;
}

double joint_success_probability(const LinkConfig& link, const QuadratureSpec& quad) {
    link.validate();
    const double th = link.theta_hat();
    const double wp = link.net.wp;
    const double lambda = link.net.lambda;
    const int m = link.m;
    const auto& pl = link.net.pathloss;
    const double alpha = pl.alpha;

    // interferer locations are shared between the two slots, so the pgfl
    // prefactor carries the squared per-point factor
    double expo = lambda * radial_integral([&](double r) {
        double t = th * pl.gain(r);
        double v = std::isfinite(t) ? -wp * std::expm1(-m * std::log1p(t)) : wp;
        return v * (2.0 - v);
    }, alpha, quad);
    double prefactor = std::exp(-expo);

    // bracket for one slot: wp * Gamma(m+n)/Gamma(m) * ratio + (1-wp) * 1(n=0)
    auto bracket = [&](double t, int n) {
        double v = wp * std::exp(log_poch(m, n)) * ratio_term(t, n, m);
        if (n == 0) v += 1.0 - wp;
        return v;
    };

    std::map<std::pair<int, int>, double> k_cache;
    auto K = [&](int n1, int n2) {
        if (n1 > n2) std::swap(n1, n2);
        auto it = k_cache.find({n1, n2});
        if (it != k_cache.end()) return it->second;
        double v = lambda * radial_integral([&](double r) {
            double t = th * pl.gain(r);
            return bracket(t, n1) * bracket(t, n2);
        }, alpha, quad);
        k_cache.emplace(std::make_pair(n1, n2), v);
        return v;
    };

    double total = 0.0;
    for (int i = 0; i <= m - 1; ++i) {
        for (int j = 0; j <= m - 1; ++j) {
            double inner;
            if (i + j == 0) {
                inner = 1.0;
            } else {
                inner = 0.0;
                for (int l = 1; l <= i + j; ++l) {
                    for (const auto& mat : enumerate_matrices({i, j}, l)) {
                        double prod = double(multiplicity(mat)) / factorial(l);
                        for (int c = 0; c < l; ++c) prod *= K(mat.at(0, c), mat.at(1, c));
                        inner += prod;
                    }
                }
            }
            total += inner / (factorial(i) * factorial(j));
        }
    }
    return prefactor * total;
}

double joint_success_probability_singular(const LinkConfig& link) {
    link.validate();
    if (link.net.pathloss.kind != PathLossKind::Singular)
        throw std::invalid_argument("closed form requires the singular path loss model");
    if (link.net.wp != 1.0)
        throw std::invalid_argument("joint closed form requires wp = 1");
    const double delta = link.net.pathloss.delta();
    const double th = link.theta_hat();
    const double lambda = link.net.lambda;
    const int m = link.m;
    const double lg_m = std::lgamma(double(m));

    double expo = lambda * M_PI * std::pow(th, delta) *
                  std::exp(std::lgamma(1 - delta) + std::lgamma(2 * m + delta) -
                           std::lgamma(2.0 * m));
    double prefactor = std::exp(-expo);

    auto K = [&](int n1, int n2) {
        return lambda * delta * M_PI * std::pow(th, delta) *
               std::exp(std::lgamma(double(m + n1)) + std::lgamma(double(m + n2)) +
                        std::lgamma(n1 + n2 - delta) + std::lgamma(2 * m + delta) -
                        2 * lg_m - std::lgamma(double(2 * m + n1 + n2)));
    };

    double total = 0.0;
    for (int i = 0; i <= m - 1; ++i) {
        for (int j = 0; j <= m - 1; ++j) {
            double inner;
            if (i + j == 0) {
                inner = 1.0;
            } else {
                inner = 0.0;
                for (int l = 1; l <= i + j; ++l) {
                    for (const auto& mat : enumerate_matrices({i, j}, l)) {
                        double prod = double(multiplicity(mat)) / factorial(l);
                        for (int c = 0; c < l; ++c) prod *= K(mat.at(0, c), mat.at(1, c));
                        inner += prod;
                    }
                }
            }
            total += inner / (factorial(i) * factorial(j));
        }
    }
    return prefactor * total;
}

double joint_outage(const LinkConfig& link, const QuadratureSpec& quad) {
    return 1.0 - 2.0 * success_probability(link, quad) + joint_success_probability(link, quad);
}

double at_least_one(const LinkConfig& link, const QuadratureSpec& quad) {
    return 2.0 * success_probability(link, quad) - joint_success_probability(link, quad);
}

std::pair<double, double> independent_baselines(const LinkConfig& link,
                                                const QuadratureSpec& quad) {
    double p = success_probability(link, quad);
    return {p * p, 1.0 - (1.0 - p) * (1.0 - p)};
}

OutageSummary outage_summary(const LinkConfig& link, const QuadratureSpec& quad) {
    OutageSummary s{};
    s.p_success = success_probability(link, quad);
    s.p_joint = joint_success_probability(link, quad);
    s.p_joint_outage = 1.0 - 2.0 * s.p_success + s.p_joint;
    s.p_at_least_one = 2.0 * s.p_success - s.p_joint;
    s.p_indep_square = s.p_success * s.p_success;
    s.p_indep_diversity = 1.0 - (1.0 - s.p_success) * (1.0 - s.p_success);
    return s;
}

}  // namespace pnet

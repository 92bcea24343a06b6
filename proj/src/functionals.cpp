#include "pnet/functionals.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace pnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void NetworkConfig::validate() const {
    if (lambda <= 0.0) throw std::invalid_argument("intensity must be positive");
    if (wp < 0.0 || wp > 1.0) throw std::invalid_argument("transmit probability must be in [0,1]");
    if (pathloss.alpha <= 2.0) throw std::invalid_argument("path loss exponent must exceed 2");
}

double sum_product_stationary(double lambda, const ExponentVector& p,
                              const std::function<double(double)>& one_minus_g_bar,
                              const std::function<double(double, std::span<const int>)>& col,
                              double alpha_tail, const QuadratureSpec& spec) {
    if (lambda <= 0.0) throw std::invalid_argument("intensity must be positive");
    const double pgfl_exponent =
        lambda * radial_integral(one_minus_g_bar, alpha_tail, spec);
    const double prefactor = std::exp(-pgfl_exponent);

    const int total = norm1(p);
    if (total == 0) return prefactor;

    // column integrals recur across matrices; cache per column exponent vector
    std::map<std::vector<int>, double> col_cache;
    auto col_integral = [&](const std::vector<int>& e) {
        auto it = col_cache.find(e);
        if (it != col_cache.end()) return it->second;
        const double v = lambda * radial_integral([&](double r) { return col(r, e); },
                                                  alpha_tail, spec);
        col_cache.emplace(e, v);
        return v;
    };

    double sum = 0.0;
    for (int l = 1; l <= total; ++l) {
        double lfact = std::tgamma(l + 1.0);
        for (const ExponentMatrix& m : enumerate_matrices(p, l)) {
            double term = static_cast<double>(multiplicity(m)) / lfact;
            for (int j = 0; j < l && term != 0.0; ++j) term *= col_integral(m.column(j));
            sum += term;
        }
    }
    return prefactor * sum;
}

double interference_functional(const NetworkConfig& cfg, const FunctionalSpec& spec,
                               const QuadratureSpec& quad) {
    cfg.validate();
    if (spec.c <= 0.0) throw std::invalid_argument("damping constant must be positive");
    const int q = static_cast<int>(spec.p.size());
    if (q == 0) throw std::invalid_argument("at least one slot required");

    const auto& pl = cfg.pathloss;
    const auto& fad = cfg.fading;
    const double wp = cfg.wp;

    // 1 - (wp*E[e^{-c h l}] + 1 - wp)^q without cancellation at small gains
    auto one_minus_g_bar = [&, q](double r) {
        const double ome = fad.one_minus_exp_moment(pl.gain(r), spec.c);
        if (wp * ome >= 1.0) return 1.0;
        return -std::expm1(double(q) * std::log1p(-wp * ome));
    };
    auto col = [&](double r, std::span<const int> e) {
        const double gain = pl.gain(r);
        double prod = 1.0;
        for (int mj : e) {
            const double em = fad.exp_moment(gain, mj, spec.c);
            prod *= wp * em + (mj == 0 ? 1.0 - wp : 0.0);
            if (prod == 0.0) break;
        }
        return prod;
    };
    return sum_product_stationary(cfg.lambda, spec.p, one_minus_g_bar, col, pl.alpha, quad);
}

double rayleigh_singular_moment(int k, double lambda, double wp, double alpha) {
    if (k < 1 || k > 4) throw std::invalid_argument("closed forms cover k in 1..4 only");
    if (alpha <= 2.0) throw std::invalid_argument("path loss exponent must exceed 2");
    const auto [d, kp] = derived_exponents(alpha, lambda, wp);
    const double e = std::exp(-kp);
    switch (k) {
        case 1:
            return e * kp * d;
        case 2:
            return e * (kp * d * (1.0 - d) + kp * kp * d * d);
        case 3:
            return e * (kp * d * (1.0 - d) * (2.0 - d) + 3.0 * kp * kp * d * d * (1.0 - d) +
                        kp * kp * kp * d * d * d);
        case 4:
            return e * (kp * d * (1.0 - d) * (2.0 - d) * (3.0 - d) +
                        kp * kp * d * d * (4.0 * (1.0 - d) * (2.0 - d) + 3.0 * (1.0 - d) * (1.0 - d)) +
                        6.0 * kp * kp * kp * d * d * d * (1.0 - d) +
                        kp * kp * kp * kp * d * d * d * d);
    }
    return 0.0;
}

double laplace_moment_check(int k, double lambda, double wp, double alpha) {
    if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
    if (alpha <= 2.0) throw std::invalid_argument("path loss exponent must exceed 2");
    const auto [d, kp] = derived_exponents(alpha, lambda, wp);

    // L^{(n)}(s) = P_n(s) L(s) with P_n a sum of c * s^{a + b*delta} terms;
    // differentiating maps c*s^e to c*e*s^{e-1} - c*kappa*delta*s^{e+delta-1}.
    std::map<std::pair<int, int>, double> terms{{{0, 0}, 1.0}};
    for (int n = 0; n < k; ++n) {
        std::map<std::pair<int, int>, double> next;
        for (const auto& [ab, c] : terms) {
            const double e = ab.first + ab.second * d;
            if (e != 0.0) next[{ab.first - 1, ab.second}] += c * e;
            next[{ab.first - 1, ab.second + 1}] -= c * kp * d;
        }
        terms = std::move(next);
    }
    double sum = 0.0;
    for (const auto& [ab, c] : terms) sum += c;
    return (k % 2 == 0 ? 1.0 : -1.0) * sum * std::exp(-kp);
}

double propagation_equivalent_intensity(double lambda, const FadingModel& fading, double delta) {
    return lambda * fading.delta_moment(delta) / std::tgamma(1.0 + delta);
}

}  // namespace pnet

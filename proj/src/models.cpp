#include "pnet/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

double bessel_i(double nu, double x) {
    if (x < 0.0) throw std::domain_error("bessel_i: x must be non-negative");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw std::domain_error("bessel_i: negative order at x = 0");
    }
    if (x <= 200.0) {
        // power series, all terms positive
        const double half = 0.5 * x;
        double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
        double sum = term;
        const double x2 = half * half;
        for (int j = 1; j < 500; ++j) {
            term *= x2 / (j * (j + nu));
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return sum;
    }
    // asymptotic expansion for large argument
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 12; ++n) {
        const double num = mu - (2.0 * n - 1.0) * (2.0 * n - 1.0);
        const double next = -term * num / (8.0 * n * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
    }
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * sum;
}

double PathLossModel::gain(double r) const {
    if (r < 0.0) throw std::domain_error("distance must be non-negative");
    switch (kind) {
        case PathLossKind::Singular:
            if (r == 0.0) throw std::domain_error("singular path gain pole at r = 0");
            return std::pow(r, -alpha);
        case PathLossKind::Minimum:
            return r <= 1.0 ? 1.0 : std::pow(r, -alpha);
        case PathLossKind::Epsilon:
            return 1.0 / (eps + std::pow(r, alpha));
        case PathLossKind::DistancePlusOne:
            return std::pow(1.0 + r, -alpha);
    }
    return 0.0;
}

PathLossModel PathLossModel::parse(const std::string& s, double alpha) {
    PathLossModel m;
    m.alpha = alpha;
    if (s == "singular") {
        m.kind = PathLossKind::Singular;
    } else if (s == "min") {
        m.kind = PathLossKind::Minimum;
    } else if (s.rfind("eps:", 0) == 0) {
        m.kind = PathLossKind::Epsilon;
        m.eps = std::stod(s.substr(4));
        if (m.eps <= 0.0) throw std::invalid_argument("epsilon must be positive");
    } else if (s == "dist1") {
        m.kind = PathLossKind::DistancePlusOne;
    } else {
        throw std::invalid_argument("unknown path loss model: " + s);
    }
    if (m.alpha <= 2.0) throw std::invalid_argument("path loss exponent must exceed 2");
    return m;
}

DerivedExponents derived_exponents(double alpha, double lambda, double wp) {
    DerivedExponents d;
    d.delta = 2.0 / alpha;
    d.kappa = wp * lambda * kPi / sinc(d.delta);
    return d;
}

namespace {

// Gamma(shape, 1/rate) parameters for the gamma-family fading models.
struct GammaParams {
    double shape, rate;
};

bool gamma_family(const FadingModel& f, GammaParams& g) {
    switch (f.kind) {
        case FadingKind::Rayleigh: g = {1.0, 1.0}; return true;
        case FadingKind::Erlang: g = {static_cast<double>(f.k), 1.0}; return true;
        case FadingKind::Nakagami: g = {f.m, f.m}; return true;
        default: return false;
    }
}

double raw_mean(const FadingModel& f) {
    switch (f.kind) {
        case FadingKind::Rayleigh: return 1.0;
        case FadingKind::Erlang: return static_cast<double>(f.k);
        case FadingKind::Rice: return f.k + f.psi;
        case FadingKind::Nakagami: return 1.0;
    }
    return 1.0;
}

double raw_second_moment(const FadingModel& f) {
    switch (f.kind) {
        case FadingKind::Rayleigh: return 2.0;
        case FadingKind::Erlang: return static_cast<double>(f.k) * (f.k + 1.0);
        case FadingKind::Rice: {
            const double mean = f.k + f.psi;
            return 2.0 * (f.k + 2.0 * f.psi) + mean * mean;
        }
        case FadingKind::Nakagami: return 1.0 + 1.0 / f.m;
    }
    return 1.0;
}

double raw_pdf(const FadingModel& f, double x) {
    switch (f.kind) {
        case FadingKind::Rayleigh:
            return std::exp(-x);
        case FadingKind::Erlang:
            if (x == 0.0) return f.k == 1 ? 1.0 : 0.0;
            return std::exp((f.k - 1.0) * std::log(x) - x - std::lgamma(f.k));
        case FadingKind::Nakagami:
            if (x == 0.0) {
                if (f.m == 1.0) return 1.0;
                return f.m > 1.0 ? 0.0 : INFINITY;
            }
            return std::exp(f.m * std::log(f.m) + (f.m - 1.0) * std::log(x) - f.m * x -
                            std::lgamma(f.m));
        case FadingKind::Rice: {
            const double nu = 0.5 * f.k - 1.0;
            if (x == 0.0) {
                if (f.k == 2) return 0.5 * std::exp(-0.5 * f.psi);
                return f.k > 2 ? 0.0 : INFINITY;
            }
            return 0.5 * std::exp(-0.5 * (x + f.psi)) *
                   std::pow(x / f.psi, 0.25 * f.k - 0.5) * bessel_i(nu, std::sqrt(f.psi * x));
        }
    }
    return 0.0;
}

double raw_sample(const FadingModel& f, std::mt19937_64& rng) {
    GammaParams g;
    if (gamma_family(f, g)) {
        std::gamma_distribution<double> dist(g.shape, 1.0 / g.rate);
        return dist(rng);
    }
    // Rice: k squared unit-variance normals, total noncentrality psi
    std::normal_distribution<double> n01(0.0, 1.0);
    double s = 0.0;
    for (int i = 0; i < f.k; ++i) {
        double z = n01(rng) + (i == 0 ? std::sqrt(f.psi) : 0.0);
        s += z * z;
    }
    return s;
}

double gamma_exp_moment(const GammaParams& g, double gain, int j, double c) {
    if (gain == 0.0) return j == 0 ? 1.0 : 0.0;
    if (!std::isfinite(gain)) return 0.0;
    const double a = g.shape, b = g.rate;
    double log_denom;
    if (gain > 1.0) {
        log_denom = std::log(gain) + std::log(c + b / gain);
    } else {
        log_denom = std::log(b + c * gain);
    }
    const double logv = std::lgamma(a + j) - std::lgamma(a) + a * std::log(b) +
                        j * std::log(gain) - (a + j) * log_denom;
    return std::exp(logv);
}

double rice_exp_moment(const FadingModel& f, double gain, int j, double c) {
    if (gain == 0.0) return j == 0 ? 1.0 : 0.0;
    if (!std::isfinite(gain)) return 0.0;
    const double s = c * gain;
    const double halfk = 0.5 * f.k;
    if (j == 0)
        return std::exp(-f.psi * s / (1.0 + 2.0 * s) - halfk * std::log1p(2.0 * s));
    if (j == 1) {
        const double lognum = std::log(gain) + std::log(f.k * (1.0 + 2.0 * s) + f.psi);
        return std::exp(lognum - (halfk + 2.0) * std::log1p(2.0 * s) -
                        f.psi * s / (1.0 + 2.0 * s));
    }
    // no tabulated form for j >= 2: integrate against the pdf
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-10;
    const double xmax = f.k + f.psi + 120.0;
    return integrate(
        [&](double x) {
            const double p = raw_pdf(f, x);
            if (p == 0.0 || !std::isfinite(p)) return 0.0;
            return std::exp(j * std::log(x * gain) - c * x * gain) * p;
        },
        0.0, xmax, spec);
}

}  // namespace

double FadingModel::mean() const { return normalize_mean ? 1.0 : raw_mean(*this); }

double FadingModel::second_moment() const {
    const double s2 = raw_second_moment(*this);
    if (!normalize_mean) return s2;
    const double mu = raw_mean(*this);
    return s2 / (mu * mu);
}

double FadingModel::pdf(double x) const {
    if (x < 0.0) return 0.0;
    if (!normalize_mean) return raw_pdf(*this, x);
    const double mu = raw_mean(*this);
    return mu * raw_pdf(*this, mu * x);
}

double FadingModel::sample(std::mt19937_64& rng) const {
    const double h = raw_sample(*this, rng);
    return normalize_mean ? h / raw_mean(*this) : h;
}

double FadingModel::exp_moment(double gain, int j, double c) const {
    if (j < 0) throw std::invalid_argument("moment order must be non-negative");
    if (c <= 0.0) throw std::invalid_argument("damping constant must be positive");
    const double g_eff = normalize_mean ? gain / raw_mean(*this) : gain;
    GammaParams g;
    if (gamma_family(*this, g)) return gamma_exp_moment(g, g_eff, j, c);
    return rice_exp_moment(*this, g_eff, j, c);
}

double FadingModel::one_minus_exp_moment(double gain, double c) const {
    if (c <= 0.0) throw std::invalid_argument("damping constant must be positive");
    const double g_eff = normalize_mean ? gain / raw_mean(*this) : gain;
    if (g_eff == 0.0) return 0.0;
    if (!std::isfinite(g_eff)) return 1.0;
    GammaParams g;
    if (gamma_family(*this, g))
        return -std::expm1(-g.shape * std::log1p(c * g_eff / g.rate));
    const double s = c * g_eff;
    return -std::expm1(-psi * s / (1.0 + 2.0 * s) - 0.5 * k * std::log1p(2.0 * s));
}

double FadingModel::delta_moment(double delta) const {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must be in (0,1)");
    double v;
    GammaParams g;
    if (gamma_family(*this, g)) {
        v = std::exp(std::lgamma(g.shape + delta) - std::lgamma(g.shape) -
                     delta * std::log(g.rate));
    } else {
        QuadratureSpec spec;
        spec.abs_tol = 1e-12;
        spec.rel_tol = 1e-10;
        const double xmax = k + psi + 120.0;
        v = integrate([&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, delta) * raw_pdf(*this, x); },
                      0.0, xmax, spec);
    }
    return normalize_mean ? v / std::pow(raw_mean(*this), delta) : v;
}

FadingModel FadingModel::parse(const std::string& s) {
    FadingModel f;
    if (s == "rayleigh") {
        f.kind = FadingKind::Rayleigh;
    } else if (s.rfind("erlang:", 0) == 0) {
        f.kind = FadingKind::Erlang;
        f.k = std::stoi(s.substr(7));
        if (f.k < 1) throw std::invalid_argument("erlang k must be a positive integer");
    } else if (s.rfind("rice:", 0) == 0) {
        f.kind = FadingKind::Rice;
        std::istringstream is(s.substr(5));
        char comma;
        if (!(is >> f.k >> comma >> f.psi) || comma != ',' || f.k < 1 || f.psi <= 0.0)
            throw std::invalid_argument("rice parameters must be k,psi with k >= 1, psi > 0");
    } else if (s.rfind("nakagami:", 0) == 0) {
        f.kind = FadingKind::Nakagami;
        f.m = std::stod(s.substr(9));
        if (f.m <= 0.0) throw std::invalid_argument("nakagami m must be positive");
    } else {
        throw std::invalid_argument("unknown fading model: " + s);
    }
    return f;
}

std::string FadingModel::describe() const {
    std::ostringstream os;
    switch (kind) {
        case FadingKind::Rayleigh: os << "rayleigh"; break;
        case FadingKind::Erlang: os << "erlang:" << k; break;
        case FadingKind::Rice: os << "rice:" << k << "," << psi; break;
        case FadingKind::Nakagami: os << "nakagami:" << m; break;
    }
    if (normalize_mean) os << "(unit-mean)";
    return os.str();
}

}  // namespace pnet

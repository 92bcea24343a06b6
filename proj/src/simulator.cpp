#include "pnet/simulator.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace pnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t rep_seed(std::uint64_t base, std::uint64_t rep) {
    return splitmix64(base ^ splitmix64(rep));
}

// l(r) with the r = 0 pole mapped to +inf instead of a throw; a zero radius
// has probability zero but can still be hit by the sampler.
double gain_at(const PathLossModel& pl, double r) {
    if (r == 0.0 && pl.kind == PathLossKind::Singular) return INFINITY;
    return pl.gain(r);
}

// int_R^inf l(r)^power r dr via u = r^{-(alpha-2)} (bounded integrand).
double tail_gain_integral(const PathLossModel& pl, double R, int power) {
    const double a2 = pl.alpha - 2.0;
    const double U = std::pow(R, -a2);
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-10;
    return integrate([&](double u) {
        double r = std::pow(u, -1.0 / a2);
        double v = std::pow(pl.gain(r), power);
        return v == 0.0 ? 0.0 : v * (1.0 / a2) * std::pow(u, -2.0 / a2 - 1.0);
    }, 0.0, U, spec);
}

struct Accumulator {
    double sum = 0.0, sumsq = 0.0;
    std::uint64_t n = 0;
    void add(double x) { sum += x; sumsq += x * x; ++n; }
    MonteCarloEstimate finish(double window, double tail, double bias,
                              std::chrono::steady_clock::time_point t0) const {
        MonteCarloEstimate e;
        e.n = n;
        e.window = window;
        e.tail_mean = tail;
        e.bias_bound = bias;
        e.mean = sum / double(n);
        double var = sumsq / double(n) - e.mean * e.mean;
        e.std_error = std::sqrt(std::max(var, 0.0) / double(n));
        e.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return e;
    }
};

// std dev of the interference contributed by the untracked far field; with the
// mean compensated, this bounds the scale of any residual truncation effect
double tail_std(const NetworkConfig& cfg, double R) {
    return std::sqrt(2.0 * M_PI * cfg.wp * cfg.lambda * cfg.fading.second_moment() *
                     tail_gain_integral(cfg.pathloss, R, 2));
}

}  // namespace

double auto_window(const NetworkConfig& cfg, double d_floor) {
    const double alpha = cfg.pathloss.alpha;
    const double target = 5e-4;
    // l(r) <= r^{-alpha} for every model, so the singular tail variance
    // 2*pi*wp*lambda*E[h^2]*R^{2-2alpha}/(2alpha-2) bounds them all
    double c = 2.0 * M_PI * cfg.wp * cfg.lambda * cfg.fading.second_moment();
    double R = std::pow(c / ((2.0 * alpha - 2.0) * target * target), 1.0 / (2.0 * alpha - 2.0));
    return std::max(R, 4.0 * std::max(1.0, d_floor));
}

double tail_mean_interference(const NetworkConfig& cfg, double R) {
    return 2.0 * M_PI * cfg.wp * cfg.lambda * cfg.fading.mean() *
           tail_gain_integral(cfg.pathloss, R, 1);
}

std::vector<std::array<double, 2>> sample_ppp(double lambda, double R, std::mt19937_64& rng) {
    if (!(lambda > 0) || !(R > 0)) throw std::invalid_argument("lambda and R must be positive");
    std::poisson_distribution<int> count(lambda * M_PI * R * R);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = count(rng);
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) {
        double r = R * std::sqrt(unif(rng));
        double phi = 2.0 * M_PI * unif(rng);
        p = {r * std::cos(phi), r * std::sin(phi)};
    }
    return pts;
}

std::vector<double> interference_realization(const std::vector<std::array<double, 2>>& points,
                                             const NetworkConfig& cfg, int slots,
                                             std::mt19937_64& rng) {
    if (slots < 1) throw std::invalid_argument("slots must be positive");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> I(slots, 0.0);
    for (const auto& p : points) {
        double g = gain_at(cfg.pathloss, std::hypot(p[0], p[1]));
        for (int s = 0; s < slots; ++s) {
            if (cfg.wp < 1.0 && unif(rng) >= cfg.wp) continue;
            I[s] += cfg.fading.sample(rng) * g;
        }
    }
    return I;
}

MonteCarloEstimate estimate_functional(const NetworkConfig& cfg, const FunctionalSpec& spec,
                                       const SimConfig& sim) {
    cfg.validate();
    if (spec.c <= 0.0) throw std::invalid_argument("damping constant must be positive");
    const int q = static_cast<int>(spec.p.size());
    if (q == 0) throw std::invalid_argument("at least one slot required");
    if (sim.reps == 0) throw std::invalid_argument("reps must be positive");

    const double R = sim.window > 0.0 ? sim.window : auto_window(cfg);
    const double tail = tail_mean_interference(cfg, R);
    const double bias = tail_std(cfg, R);
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = cfg.lambda * M_PI * R * R;  // mean point count

    Accumulator acc;
    std::vector<double> I(q);
    for (std::uint64_t rep = 0; rep < sim.reps; ++rep) {
        std::mt19937_64 rng(rep_seed(sim.seed, rep));
        std::poisson_distribution<int> count(nu);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int n_pts = count(rng);
        for (int s = 0; s < q; ++s) I[s] = tail;
        for (int pt = 0; pt < n_pts; ++pt) {
            double r = R * std::sqrt(unif(rng));
            double g = gain_at(cfg.pathloss, r);
            for (int s = 0; s < q; ++s) {
                if (cfg.wp < 1.0 && unif(rng) >= cfg.wp) continue;
                I[s] += cfg.fading.sample(rng) * g;
            }
        }
        double log_f = 0.0;
        bool ok = true;
        for (int s = 0; s < q; ++s) {
            if (!std::isfinite(I[s])) { ok = false; break; }
            if (I[s] == 0.0 && spec.p[s] > 0) { ok = false; break; }
            if (spec.p[s] > 0) log_f += spec.p[s] * std::log(I[s]);
            log_f -= spec.c * I[s];
        }
        acc.add(ok ? std::exp(log_f) : 0.0);
    }
    return acc.finish(R, tail, bias, t0);
}

MonteCarloEstimate estimate_success(const LinkConfig& link, const SimConfig& sim) {
    link.validate();
    if (sim.reps == 0) throw std::invalid_argument("reps must be positive");
    const NetworkConfig& cfg = link.net;
    const double R = sim.window > 0.0 ? sim.window : auto_window(cfg, link.d);
    if (R <= link.d) throw std::invalid_argument("window radius must exceed d");
    const double tail = tail_mean_interference(cfg, R);
    const double bias = tail_std(cfg, R);
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = cfg.lambda * M_PI * R * R;
    const double signal_gain = cfg.pathloss.gain(link.d);

    Accumulator acc;
    for (std::uint64_t rep = 0; rep < sim.reps; ++rep) {
        std::mt19937_64 rng(rep_seed(sim.seed, rep));
        std::poisson_distribution<int> count(nu);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int n_pts = count(rng);
        double I = tail;
        for (int pt = 0; pt < n_pts; ++pt) {
            double r = R * std::sqrt(unif(rng));
            if (cfg.wp < 1.0 && unif(rng) >= cfg.wp) continue;
            I += cfg.fading.sample(rng) * gain_at(cfg.pathloss, r);
        }
        double h = cfg.fading.sample(rng);
        acc.add(h * signal_gain >= link.theta * I ? 1.0 : 0.0);
    }
    return acc.finish(R, tail, bias, t0);
}

JointEstimate estimate_joint(const LinkConfig& link, const SimConfig& sim) {
    link.validate();
    if (sim.reps == 0) throw std::invalid_argument("reps must be positive");
    const NetworkConfig& cfg = link.net;
    const double R = sim.window > 0.0 ? sim.window : auto_window(cfg, link.d);
    if (R <= link.d) throw std::invalid_argument("window radius must exceed d");
    const double tail = tail_mean_interference(cfg, R);
    const double bias = tail_std(cfg, R);
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = cfg.lambda * M_PI * R * R;
    const double signal_gain = cfg.pathloss.gain(link.d);

    Accumulator single, joint;
    for (std::uint64_t rep = 0; rep < sim.reps; ++rep) {
        std::mt19937_64 rng(rep_seed(sim.seed, rep));
        std::poisson_distribution<int> count(nu);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int n_pts = count(rng);
        double I1 = tail, I2 = tail;
        for (int pt = 0; pt < n_pts; ++pt) {
            double r = R * std::sqrt(unif(rng));
            double g = gain_at(cfg.pathloss, r);
            if (cfg.wp >= 1.0 || unif(rng) < cfg.wp) I1 += cfg.fading.sample(rng) * g;
            if (cfg.wp >= 1.0 || unif(rng) < cfg.wp) I2 += cfg.fading.sample(rng) * g;
        }
        bool s1 = cfg.fading.sample(rng) * signal_gain >= link.theta * I1;
        bool s2 = cfg.fading.sample(rng) * signal_gain >= link.theta * I2;
        single.add(0.5 * (double(s1) + double(s2)));
        joint.add(s1 && s2 ? 1.0 : 0.0);
    }
    JointEstimate e;
    e.p_success = single.finish(R, tail, bias, t0);
    e.p_joint = joint.finish(R, tail, bias, t0);
    return e;
}

}  // namespace pnet

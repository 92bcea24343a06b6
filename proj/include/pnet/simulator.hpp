#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "pnet/functionals.hpp"
#include "pnet/outage.hpp"

namespace pnet {

struct SimConfig {
    double window = 0.0;      // disc radius; 0 selects the automatic rule
    std::uint64_t reps = 100000;
    std::uint64_t seed = 1;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double window = 0.0;          // radius actually simulated
    double tail_mean = 0.0;       // deterministic far-field compensation per slot
    double bias_bound = 0.0;      // std dev of the uncompensated far field
    double elapsed_seconds = 0.0;
};

// Poisson(lambda*pi*R^2) points uniform on the disk b(o, R).
std::vector<std::array<double, 2>> sample_ppp(double lambda, double R, std::mt19937_64& rng);

// One realization of q slot interferences from a fixed point set: per-point,
// per-slot ALOHA marks Bernoulli(wp) and fresh fading, shared locations.
std::vector<double> interference_realization(const std::vector<std::array<double, 2>>& points,
                                             const NetworkConfig& cfg, int slots,
                                             std::mt19937_64& rng);

// Disc radius such that the untracked far field contributes a standard
// deviation of at most 5e-4 to the interference, floored at 4*max(1, d_floor).
double auto_window(const NetworkConfig& cfg, double d_floor = 1.0);

// Mean interference from interferers beyond radius R (added back to every
// simulated realization as a deterministic constant).
double tail_mean_interference(const NetworkConfig& cfg, double R);

// Monte Carlo estimate of E[prod_i I_i^{p_i} exp(-c I_i)] with shared
// interferer locations and independent per-slot ALOHA marks and fading.
MonteCarloEstimate estimate_functional(const NetworkConfig& cfg, const FunctionalSpec& spec,
                                       const SimConfig& sim);

struct JointEstimate {
    MonteCarloEstimate p_success;  // single-transmission success
    MonteCarloEstimate p_joint;    // both of two slots succeed
};

// Success probability of one transmission over distance d at threshold theta.
MonteCarloEstimate estimate_success(const LinkConfig& link, const SimConfig& sim);

// Single and joint success from the same replications (common random numbers;
// the single estimate averages the two slots).
JointEstimate estimate_joint(const LinkConfig& link, const SimConfig& sim);

}  // namespace pnet

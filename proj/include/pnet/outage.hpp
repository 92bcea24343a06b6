#pragma once

#include <utility>

#include "pnet/functionals.hpp"

namespace pnet {

// Source-destination link in a Poisson field, Nakagami(m) fading with integer
// m (the ccdf sum representation requires it; non-integer m is rejected).
struct LinkConfig {
    NetworkConfig net;
    int m = 1;          // Nakagami parameter
    double theta = 1.0; // SIR threshold, > 0
    double d = 1.0;     // source-destination distance, > 0

    double theta_hat() const { return theta / net.pathloss.gain(d); }
    void validate() const;
};

// P[SIR >= theta] for a single transmission.
double success_probability(const LinkConfig& link, const QuadratureSpec& quad = {});

// Closed form for the singular path loss model (log-gamma evaluation).
double success_probability_singular(const LinkConfig& link);

// P[both of two distinct slots succeed], same interferer locations.
double joint_success_probability(const LinkConfig& link, const QuadratureSpec& quad = {});

// Closed form, singular path loss, wp = 1 only.
double joint_success_probability_singular(const LinkConfig& link);

// 1 - 2 P[A] + P[A_r, A_s]: both of two transmissions fail.
double joint_outage(const LinkConfig& link, const QuadratureSpec& quad = {});

// 2 P[A] - P[A_r, A_s]: time diversity, at least one of two succeeds.
double at_least_one(const LinkConfig& link, const QuadratureSpec& quad = {});

// {P[A]^2, 1 - (1 - P[A])^2}: the counterparts under independent interference.
std::pair<double, double> independent_baselines(const LinkConfig& link,
                                                const QuadratureSpec& quad = {});

struct OutageSummary {
    double p_success;
    double p_joint;
    double p_joint_outage;     // 1 - 2 p_success + p_joint
    double p_at_least_one;     // 2 p_success - p_joint
    double p_indep_square;     // p_success^2
    double p_indep_diversity;  // 1 - (1 - p_success)^2
};

OutageSummary outage_summary(const LinkConfig& link, const QuadratureSpec& quad = {});

}  // namespace pnet

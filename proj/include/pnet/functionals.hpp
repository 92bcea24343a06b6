#pragma once

#include <functional>
#include <span>

#include "pnet/combinatorics.hpp"
#include "pnet/models.hpp"
#include "pnet/quadrature.hpp"

namespace pnet {

struct NetworkConfig {
    double lambda = 0.1;  // interferer intensity, > 0
    double wp = 1.0;      // ALOHA transmit probability, (0,1]
    FadingModel fading;
    PathLossModel pathloss;

    void validate() const;
};

struct FunctionalSpec {
    ExponentVector p;  // per-slot exponents
    double c = 1.0;    // damping constant, > 0
};

// Stationary sum-product functional on R^2 for radially symmetric,
// mark-marginalized integrands:
//   exp(-lambda*int one_minus_g_bar) * sum_l sum_M (C_M/l!) prod_i lambda*int col(r, M column i)
// one_minus_g_bar(r) = 1 - E_X[g(x,X)] at radius r, supplied directly so the
//   caller can evaluate it without cancellation where g is close to 1;
// col(r, e) = E_X[g(x,X) * prod_j f_j(x,X)^{e_j}] at radius r.
// ||p||_1 = 0 degenerates to the bare pgfl. alpha_tail is the algebraic decay
// used for the tail map of the quadrature (pass pathloss alpha).
double sum_product_stationary(double lambda, const ExponentVector& p,
                              const std::function<double(double)>& one_minus_g_bar,
                              const std::function<double(double, std::span<const int>)>& col,
                              double alpha_tail, const QuadratureSpec& spec = {});

// E[prod_i I_i^{p_i} exp(-c I_i)] for q slots of a stationary ALOHA Poisson
// network with i.i.d. fading, via the matrix-class expansion and quadrature.
double interference_functional(const NetworkConfig& cfg, const FunctionalSpec& spec,
                               const QuadratureSpec& quad = {});

// Closed forms of E[I^k exp(-I)], k = 1..4, Rayleigh fading / singular path
// loss, in terms of delta = 2/alpha and kappa = wp*lambda*pi/sinc(delta).
double rayleigh_singular_moment(int k, double lambda, double wp, double alpha);

// Same quantity as (-1)^k L^{(k)}(1) for L(s) = exp(-kappa s^delta), by exact
// recursive differentiation of the composite (no numeric differencing).
double laplace_moment_check(int k, double lambda, double wp, double alpha);

// lambda' = lambda * E[h^delta] / Gamma(1+delta): intensity of the equivalent
// propagation process, enabling reuse of the Rayleigh/singular closed forms.
double propagation_equivalent_intensity(double lambda, const FadingModel& fading, double delta);

}  // namespace pnet

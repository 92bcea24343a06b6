#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pnet/quadrature.hpp"

namespace pnet {

// sin(pi x)/(pi x)
double sinc(double x);

// Modified Bessel function of the first kind, real order nu >= -1/2.
double bessel_i(double nu, double x);

enum class PathLossKind { Singular, Minimum, Epsilon, DistancePlusOne };

struct PathLossModel {
    PathLossKind kind = PathLossKind::Singular;
    double alpha = 4.0;  // path loss exponent, > 2
    double eps = 1.0;    // Epsilon variant only, > 0

    // l(r). Throws std::domain_error for the Singular pole at r = 0.
    double gain(double r) const;
    double delta() const { return 2.0 / alpha; }

    static PathLossModel parse(const std::string& s, double alpha);
};

// kappa = wp*lambda*pi/sinc(delta), the exponent of the Rayleigh/singular pgfl.
struct DerivedExponents {
    double delta;
    double kappa;
};
DerivedExponents derived_exponents(double alpha, double lambda, double wp);

enum class FadingKind { Rayleigh, Erlang, Rice, Nakagami };

// Power fading distributions, pdfs verbatim from the standard table forms:
// Rayleigh exp(-x); Erlang x^{k-1}e^{-x}/(k-1)!; Rice noncentral chi-square
// with k degrees of freedom and noncentrality psi; Nakagami Gamma(m, 1/m).
// normalize_mean rescales h by its mean for the E[h]=1 convention (off by
// default; the table forms are kept bit-exact otherwise).
struct FadingModel {
    FadingKind kind = FadingKind::Rayleigh;
    double m = 1.0;   // Nakagami shape, positive real here (outage demands integer)
    int k = 1;        // Erlang / Rice degrees
    double psi = 1.0; // Rice noncentrality
    bool normalize_mean = false;

    double mean() const;
    double second_moment() const;

    double pdf(double x) const;
    double sample(std::mt19937_64& rng) const;

    // E[(h*gain)^j exp(-c*h*gain)]; closed forms except Rice j >= 2, which
    // falls back to quadrature against the pdf.
    double exp_moment(double gain, int j, double c) const;

    // E[1 - exp(-c*h*gain)], evaluated without cancellation for small gains
    // (the raw difference 1 - exp_moment(gain, 0, c) loses precision exactly
    // where the radial tail substitution amplifies absolute error).
    double one_minus_exp_moment(double gain, double c) const;

    // E[h^delta], 0 < delta < 1.
    double delta_moment(double delta) const;

    static FadingModel parse(const std::string& s);
    std::string describe() const;
};

}  // namespace pnet

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace pnet {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdiv = 10000;
};

// Thrown when the adaptive scheme cannot reach the requested tolerance.
// Carries the best available estimate and its error bound.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// 2*pi * int_0^inf F(r) r dr for an integrand with algebraic tail F ~ r^{-alpha}
// (or faster). Splits at r=1; the tail is mapped to (0,1] by u = r^{-(alpha-2)},
// which turns the slowest admissible decay into a bounded integrand.
double radial_integral(const std::function<double(double)>& f_of_r, double alpha,
                       const QuadratureSpec& spec = {});

}  // namespace pnet

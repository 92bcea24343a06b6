#include "pnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace pnet {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1,1].
constexpr double kt[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wk[7] * fc;
    double g = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kt[i];
        const double s = f(c - x) + f(c + x);
        k += wk[i] * s;
        if (i % 2 == 1) g += wg[i / 2] * s;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = k * h;
    const double diff = std::abs(k - g) * h;
    p.error = std::min(diff, std::pow(200.0 * diff, 1.5));
    if (!std::isfinite(p.value)) p.error = std::abs(p.value);
    return p;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    if (a == b) return 0.0;
    std::priority_queue<Panel> q;
    Panel whole = gk15(f, a, b);
    double total = whole.value;
    double err = whole.error;
    q.push(whole);
    int used = 1;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (used >= spec.max_subdiv || q.empty())
            throw AccuracyError("adaptive quadrature did not converge", total, err);
        Panel worst = q.top();
        q.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval exhausted at machine precision; accept its estimate
            err -= worst.error;
            continue;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        q.push(left);
        q.push(right);
        ++used;
    }
    return total;
}

double radial_integral(const std::function<double(double)>& f_of_r, double alpha,
                       const QuadratureSpec& spec) {
    if (alpha <= 2.0) throw std::invalid_argument("radial integral needs alpha > 2");
    const double two_pi = 2.0 * 3.14159265358979323846;
    QuadratureSpec half = spec;
    half.abs_tol = 0.5 * spec.abs_tol;
    half.rel_tol = 0.5 * spec.rel_tol;

    auto near = [&](double r) {
        const double v = f_of_r(r);
        return v == 0.0 ? 0.0 : v * r;
    };
    const double head = integrate(near, 0.0, 1.0, half);

    // r in [1, inf): u = r^{-(alpha-2)}, r dr = (1/(alpha-2)) u^{-2/(alpha-2)-1} du
    const double am2 = alpha - 2.0;
    auto far = [&](double u) {
        const double r = std::pow(u, -1.0 / am2);
        const double v = f_of_r(r);
        if (v == 0.0) return 0.0;
        return v * std::pow(u, -2.0 / am2 - 1.0) / am2;
    };
    const double tail = integrate(far, 0.0, 1.0, half);
    return two_pi * (head + tail);
}

}  // namespace pnet

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace trp {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    bool converged = false;
    std::size_t evaluations = 0;
};

namespace detail {

extern const double kGk15Nodes[8];    // Kronrod abscissae on [0,1], descending
extern const double kGk15Weights[8];  // Kronrod weights
extern const double kG7Weights[4];    // embedded Gauss weights

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One 15-point Kronrod / 7-point Gauss pass over [a,b].
template <typename F>
Panel gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    double resg = fc * kG7Weights[3];
    double resk = fc * kGk15Weights[7];
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double absc = half * kGk15Nodes[j];
        fv1[j] = f(center - absc);
        fv2[j] = f(center + absc);
        double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kG7Weights[j / 2] * fsum;
        resk += kGk15Weights[j] * fsum;
    }
    double reskh = resk * 0.5;
    double resasc = kGk15Weights[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kGk15Weights[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }
    resasc *= half;

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return Panel{a, b, resk * half, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Splits the worst panel until
// the summed error estimate is within max(abs_tol, rel_tol * |integral|) or
// the panel budget runs out; the result always carries the achieved error.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = 1e-6,
                           double abs_tol = 0.0, std::size_t max_panels = 256) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Panel> panels;
    panels.push(detail::gk15(f, a, b));
    res.evaluations = 15;

    double total = panels.top().value;
    double total_err = panels.top().error;
    while (panels.size() < max_panels) {
        double tol = std::max(abs_tol, rel_tol * std::fabs(total));
        if (total_err <= tol) break;
        detail::Panel worst = panels.top();
        panels.pop();
        double mid = 0.5 * (worst.a + worst.b);
        detail::Panel left = detail::gk15(f, worst.a, mid);
        detail::Panel right = detail::gk15(f, mid, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    res.value = total;
    res.error = total_err;
    res.converged = total_err <= std::max(abs_tol, rel_tol * std::fabs(total));
    return res;
}

}  // namespace trp

// SPDX-License-Identifier: Apache-2.0
#include "relaylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "relaylab/errors.hpp"

namespace relaylab::quad {
namespace {

// QUADPACK qk21 abscissae/weights. Even indices 1,3,..,9 are the Gauss nodes.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980735153, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment rule21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[10];
    double gauss = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
    return {a, b, kronrod, err};
}

}  // namespace

QuadResult gauss_kronrod(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Segment> heap;
    Segment first = rule21(f, a, b);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    int pieces = 1;
    while (true) {
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_err <= target) {
            res.converged = std::isfinite(total);
            break;
        }
        if (pieces >= spec.max_subdivisions) break;
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        Segment left = rule21(f, worst.a, mid);
        Segment right = rule21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++pieces;
        // Recompute sums periodically to shed accumulated rounding.
        if (pieces % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    res.value = total;
    res.abs_error = total_err;
    res.subdivisions = pieces;
    return res;
}

QuadResult gauss_kronrod_inf(const Integrand& f, double lower, const QuadratureSpec& spec) {
    auto mapped = [&](double t) {
        const double s = 1.0 - t;
        const double x = lower + t / s;
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return v / (s * s);
    };
    return gauss_kronrod(mapped, 0.0, 1.0, spec);
}

namespace {
double checked(const QuadResult& r) {
    if (!r.converged) {
        const double achieved = r.value != 0.0 ? r.abs_error / std::abs(r.value) : r.abs_error;
        throw ConvergenceError("quadrature did not converge (estimate " + std::to_string(r.value) +
                                   ", error " + std::to_string(r.abs_error) + ")",
                               r.value, achieved);
    }
    return r.value;
}
}  // namespace

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    return checked(gauss_kronrod(f, a, b, spec));
}

double integrate_inf(const Integrand& f, double lower, const QuadratureSpec& spec) {
    return checked(gauss_kronrod_inf(f, lower, spec));
}

}  // namespace relaylab::quad

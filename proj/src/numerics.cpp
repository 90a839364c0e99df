#include "spinspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace spinspec {

double erfcx(double x) {
    if (x < 0.0)
        throw std::domain_error("erfcx: negative argument not supported");
    if (x <= 2.0)
        return std::exp(x * x) * std::erfc(x);
    // Laplace continued fraction 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
    // partial numerators 1, 1/2, 1, 3/2, 2, ... and constant denominator x.
    // Modified Lentz evaluation; ~40 terms suffice for x >= 2.
    const double tiny = 1e-300;
    double f = tiny, c = f, d = 0.0;
    for (int j = 1; j < 400; ++j) {
        double a = (j == 1) ? 1.0 : 0.5 * (j - 1);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f / std::sqrt(M_PI);
}

double erfc_inv(double y) {
    if (!(y > 0.0 && y < 2.0))
        throw std::domain_error("erfc_inv: argument outside (0, 2)");
    if (y == 1.0) return 0.0;
    // erfc is strictly decreasing; bracket then bisect to full precision.
    double lo, hi;  // erfc(lo) >= y >= erfc(hi)
    if (y < 1.0) {
        lo = 0.0;
        hi = 1.0;
        while (std::erfc(hi) > y) hi *= 2.0;  // erfc(28) < 1e-308 ends this
    } else {
        hi = 0.0;
        lo = -1.0;
        while (std::erfc(lo) < y) lo *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (std::erfc(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval evaluate(const std::function<double(double)>& f, double a, double b,
                  std::size_t& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    evals += 15;
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
    kron += kWgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss += kWg[3] * fv[7];
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol,
                                    std::size_t max_intervals) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    Interval first = evaluate(f, a, b, out.evaluations);
    total = first.value;
    total_err = first.error;
    heap.push(first);
    std::size_t used = 1;
    while (used < max_intervals) {
        double goal = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= goal) break;
        Interval worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval at float resolution; keep its estimate as-is
            total_err -= worst.error;
            continue;
        }
        Interval left = evaluate(f, worst.a, mid, out.evaluations);
        Interval right = evaluate(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    out.value = total;
    out.error_estimate = total_err;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

LineFit fit_line(const double* x, const double* y, std::size_t count) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < count; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double n = static_cast<double>(count);
    double denom = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace spinspec

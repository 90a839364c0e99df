// Small numeric toolbox: compensated summation, scaled/inverse complementary
// error functions, and an adaptive Gauss-Kronrod integrator.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace spinspec {

// Neumaier variant of Kahan summation: tracks a running compensation term so
// sums over many orders of magnitude (2^n Boltzmann weights, long windowed
// Fourier sums) keep close to full double precision.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// exp(x^2) * erfc(x) without overflow/underflow. Direct product below
// x = 2 (both factors representable), Lentz continued fraction above; the
// variance-integral path needs arguments with x^2 well past 700.
double erfcx(double x);

// Inverse of erfc on (0, 2), by bisection (erfc is strictly decreasing).
double erfc_inv(double y);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum of per-interval Kronrod-Gauss deltas
    std::size_t evaluations = 0;
    bool converged = false;
};

// Adaptive 15-point Kronrod / 7-point Gauss quadrature over [a, b].
// Splits the worst interval until |K - G| estimates meet the requested
// absolute or relative tolerance, or the subdivision budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol, double rel_tol,
                                    std::size_t max_intervals = 4000);

// Least-squares slope/intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const double* x, const double* y, std::size_t count);

}  // namespace spinspec

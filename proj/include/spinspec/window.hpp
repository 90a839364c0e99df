// Time-domain windows built by convolving Theta unit rectangles (cardinal
// B-splines, peak-normalized), their sinc^Theta energy-domain image, and the
// two closed-form bounds on its height and side-lobe area.
#pragma once

#include <cstdint>
#include <vector>

namespace spinspec {

struct WindowSpec {
    int theta = 1;      // number of convolved rectangles
    double T0 = 1.0;    // base rectangle width (time)

    // Half-width of the broadening kernel's main lobe; T0 * delta_e == 2 pi
    // by construction (T0 is canonical, delta_e derived).
    double delta_e() const;
};

struct WindowSamples {
    WindowSpec spec;
    double dt = 0.0;
    // weights[l] = b_theta(l * dt); index runs to the last l inside the
    // support |t| <= theta*T0/2 (weights[0] == 1, all in [0, 1]).
    std::vector<double> weights;
};

// Cardinal B-spline M_theta on [0, theta], evaluated by the all-positive
// two-term recursion. The alternating closed form loses ~theta digits to
// cancellation by theta ~ 30; this one is stable to theta in the hundreds.
double cardinal_bspline(int theta, double x);

// b_theta(t) = M_theta(t/T0 + theta/2) / M_theta(theta/2): even, unimodal,
// b_theta(0) = 1, support |t| <= theta*T0/2.
double window_value(const WindowSpec& spec, double t);

WindowSamples window_time_samples(const WindowSpec& spec, double dt);

// I_theta = integral of sinc^theta over the real line. Main lobes by adaptive
// quadrature, remainder by an analytic oscillatory tail; relative accuracy
// well inside 1e-8. (Also equals pi * M_theta(theta/2), which the tests use
// as an independent cross-check.)
double sinc_power_integral(int theta);

// Peak height of the unit-area broadening kernel alpha_theta sinc^theta:
// alpha_theta = pi / (delta_e * I_theta).
double alpha_theta(const WindowSpec& spec);

// Fraction of the kernel's area outside the main lobe [-delta_e, delta_e].
// Computed as side/(main+side) so the ~1e-40 values at theta = 60 keep full
// relative precision. Depends on theta only.
double side_lobe_area(int theta);

// Unit-area broadening kernel alpha_theta * sinc^theta(pi E / delta_e).
double window_energy_kernel(const WindowSpec& spec, double E);

// c = e^{-1} (1 - 6/pi^2)^{-pi^2/6} / erf(1), the constant in both bounds.
double lemma_constant_c();

struct LemmaBounds {
    double alpha_bound;   // (c pi / delta_e) sqrt(theta / 6 pi)
    double a_side_bound;  // (c / pi^{theta-3}) sqrt(theta / 6 pi), even theta
};
LemmaBounds lemma_bounds(int theta, double delta_e);

}  // namespace spinspec

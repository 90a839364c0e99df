#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "spinspec/numerics.hpp"
#include "spinspec/window.hpp"

using namespace spinspec;
namespace {
constexpr double kPi = std::numbers::pi;

// Peak values M_theta(theta/2), exact rationals from the alternating closed
// form evaluated in exact arithmetic.
const struct {
    int theta;
    double peak;
} kPeaks[] = {
    {2, 1.0},          {3, 3.0 / 4.0},        {4, 2.0 / 3.0},
    {5, 115.0 / 192.0}, {6, 11.0 / 20.0},      {8, 151.0 / 315.0},
    {10, 15619.0 / 36288.0}, {12, 655177.0 / 1663200.0},
};
}  // namespace

TEST_CASE("cardinal B-spline base cases and recursion sanity") {
    // M_1 is the indicator of [0, 1].
    CHECK(cardinal_bspline(1, 0.5) == 1.0);
    CHECK(cardinal_bspline(1, -0.1) == 0.0);
    CHECK(cardinal_bspline(1, 1.5) == 0.0);

    // M_2 is the hat on [0, 2].
    CHECK(cardinal_bspline(2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cardinal_bspline(2, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(cardinal_bspline(2, 1.75) == doctest::Approx(0.25).epsilon(1e-15));

    // Integer translates partition unity.
    for (double x : {0.3, 1.0, 2.3, 4.9}) {
        double s = 0.0;
        for (int k = -6; k <= 6; ++k) s += cardinal_bspline(5, x - k);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("cardinal B-spline peak rationals, including high orders") {
    for (const auto& f : kPeaks)
        CHECK(cardinal_bspline(f.theta, 0.5 * f.theta) ==
              doctest::Approx(f.peak).epsilon(1e-13));
    // The alternating closed form would have lost most digits here; the
    // positive recursion should still be clean.
    const double m60 = cardinal_bspline(60, 30.0);
    CHECK(m60 > 0.0);
    CHECK(m60 < 1.0);
    CHECK(cardinal_bspline(60, 29.0) < m60);  // unimodal around the center
}

TEST_CASE("window_value shape: peak, symmetry, support") {
    const WindowSpec spec{4, 3.0};
    CHECK(window_value(spec, 0.0) == 1.0);
    for (double t : {0.3, 1.1, 2.9, 5.5}) {
        // Even up to roundoff; the spline recursion is not bitwise symmetric.
        CHECK(window_value(spec, t) ==
              doctest::Approx(window_value(spec, -t)).epsilon(1e-13));
        CHECK(window_value(spec, t) >= 0.0);
        CHECK(window_value(spec, t) <= 1.0);
    }
    // Support ends at theta*T0/2 = 6.
    CHECK(window_value(spec, 5.999) > 0.0);
    CHECK(window_value(spec, 6.001) == 0.0);

    // theta = 2 is the triangle 1 - |t|/T0.
    const WindowSpec tri{2, 2.0};
    CHECK(window_value(tri, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(window_value(tri, 0.6) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("window_time_samples: unit head, bounded, monotone to the edge") {
    const WindowSpec spec{3, 2.0 * kPi};
    const double dt = 0.7;
    const WindowSamples w = window_time_samples(spec, dt);
    const double half = 0.5 * spec.theta * spec.T0;
    CHECK(static_cast<double>(w.weights.size()) ==
          std::ceil(half / dt) + 1.0);
    CHECK(w.weights[0] == 1.0);
    for (std::size_t l = 1; l < w.weights.size(); ++l) {
        CHECK(w.weights[l] >= 0.0);
        CHECK(w.weights[l] <= w.weights[l - 1]);  // unimodal, sampled from 0
        CHECK(w.weights[l] ==
              doctest::Approx(window_value(spec, static_cast<double>(l) * dt))
                  .epsilon(1e-14));
    }
    CHECK_THROWS_AS(window_time_samples(spec, 0.0), std::invalid_argument);
}

TEST_CASE("sinc power integral matches pi times the spline peak") {
    CHECK(sinc_power_integral(1) == doctest::Approx(kPi).epsilon(1e-9));
    for (const auto& f : kPeaks)
        CHECK(sinc_power_integral(f.theta) ==
              doctest::Approx(kPi * f.peak).epsilon(1e-9));
}

TEST_CASE("broadening kernel: unit area split between lobes") {
    // alpha for theta = 1, 2 collapses to 1/delta_e (I = pi in both cases).
    for (int theta : {1, 2}) {
        const WindowSpec spec{theta, 2.0 * kPi};  // delta_e = 1
        CHECK(alpha_theta(spec) == doctest::Approx(1.0).epsilon(1e-9));
    }

    // Quadrature over the main lobe must recover 1 - A_side.
    for (int theta : {2, 4, 6}) {
        const WindowSpec spec{theta, 2.0 * kPi};
        const double de = spec.delta_e();
        auto kernel = [&](double E) { return window_energy_kernel(spec, E); };
        const auto q = integrate_adaptive(kernel, -de, de, 1e-13, 1e-12);
        REQUIRE(q.converged);
        CHECK(q.value ==
              doctest::Approx(1.0 - side_lobe_area(theta)).epsilon(1e-9));
    }
}

TEST_CASE("side lobe area fixed values and decay") {
    // Quad-precision references for the side fraction of sinc^theta.
    CHECK(side_lobe_area(2) ==
          doctest::Approx(0.097176666419719373).epsilon(1e-8));
    CHECK(side_lobe_area(4) ==
          doctest::Approx(0.0029446540456603175).epsilon(1e-8));
    CHECK(side_lobe_area(6) ==
          doctest::Approx(0.00012526557142778656).epsilon(1e-8));
    CHECK(side_lobe_area(2) > side_lobe_area(4));
    CHECK(side_lobe_area(4) > side_lobe_area(6));
    CHECK(side_lobe_area(6) > side_lobe_area(12));
    // Far out the area is astronomically small but must stay positive: the
    // lobe-by-lobe sum works in relative terms, not absolute ones.
    CHECK(side_lobe_area(60) > 0.0);
    CHECK(side_lobe_area(60) < 1e-35);
}

TEST_CASE("time window and energy kernel are a Fourier pair") {
    // (1/2pi) Int b(t) cos(Et) dt over the support == kernel(E).
    for (int theta : {1, 2, 4}) {
        const WindowSpec spec{theta, 2.0 * kPi};  // delta_e = 1
        const double half = 0.5 * spec.theta * spec.T0;
        for (double E : {0.0, 0.3, 1.0, 1.7}) {
            auto f = [&](double t) {
                return window_value(spec, t) * std::cos(E * t) / (2.0 * kPi);
            };
            const auto q = integrate_adaptive(f, -half, half, 1e-12, 1e-11);
            REQUIRE(q.converged);
            CHECK(q.value == doctest::Approx(window_energy_kernel(spec, E))
                                 .epsilon(1e-7)
                                 .scale(1.0));
        }
    }
}

TEST_CASE("lemma constant and closed-form bounds dominate the exact values") {
    CHECK(lemma_constant_c() ==
          doctest::Approx(2.0366522492975223).epsilon(1e-12));
    CHECK(std::abs(lemma_constant_c() - 2.0367) < 5e-5);

    for (int theta = 2; theta <= 60; theta += 2) {
        const double de = 0.37;  // arbitrary; bounds scale out delta_e
        const LemmaBounds lb = lemma_bounds(theta, de);
        CHECK(alpha_theta({theta, 2.0 * kPi / de}) < lb.alpha_bound);
        CHECK(side_lobe_area(theta) < lb.a_side_bound);
    }
}

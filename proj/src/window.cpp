#include "spinspec/window.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinspec/numerics.hpp"

namespace spinspec {

double WindowSpec::delta_e() const { return 2.0 * M_PI / T0; }

double cardinal_bspline(int theta, double x) {
    if (theta < 1) throw std::invalid_argument("bspline: order < 1");
    if (theta == 1) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    if (x <= 0.0 || x >= static_cast<double>(theta)) return 0.0;
    // Two-term de Boor recursion, all coefficients positive: raise the order
    // one step at a time from the indicator splines. Only indices with
    // x - j inside the current support can be nonzero, so the inner loop is
    // clamped to that window (the rest stay exactly zero).
    double stack_buf[256];
    std::vector<double> heap_buf;
    double* v = stack_buf;
    if (theta > 256) {
        heap_buf.assign(theta, 0.0);
        v = heap_buf.data();
    } else {
        for (int j = 0; j < theta; ++j) v[j] = 0.0;
    }
    const int j0 = static_cast<int>(x);  // x > 0, so this is floor
    v[j0] = 1.0;
    for (int m = 2; m <= theta; ++m) {
        const int lo = std::max(0, j0 - m + 1);
        const int hi = std::min(theta - m, j0);
        for (int j = lo; j <= hi; ++j) {
            const double xj = x - j;
            const double right = (j + 1 < theta) ? v[j + 1] : 0.0;
            v[j] = (xj * v[j] + (m - xj) * right) / (m - 1);
        }
    }
    return v[0];
}

double window_value(const WindowSpec& spec, double t) {
    const double u = t / spec.T0 + 0.5 * spec.theta;
    const double num = cardinal_bspline(spec.theta, u);
    const double peak = cardinal_bspline(spec.theta, 0.5 * spec.theta);
    return num / peak;
}

WindowSamples window_time_samples(const WindowSpec& spec, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("window: dt <= 0");
    if (!(spec.T0 > 0.0)) throw std::invalid_argument("window: T0 <= 0");
    WindowSamples out;
    out.spec = spec;
    out.dt = dt;
    const double half_support = 0.5 * spec.theta * spec.T0;
    const auto count =
        static_cast<std::int64_t>(std::ceil(half_support / dt));
    out.weights.resize(static_cast<std::size_t>(count) + 1, 0.0);
    const double peak = cardinal_bspline(spec.theta, 0.5 * spec.theta);
    for (std::int64_t l = 0; l <= count; ++l) {
        const double u = l * dt / spec.T0 + 0.5 * spec.theta;
        out.weights[static_cast<std::size_t>(l)] =
            cardinal_bspline(spec.theta, u) / peak;
    }
    out.weights[0] = 1.0;  // exact by normalization
    return out;
}

namespace {

double powi(double base, int exp) {
    double r = 1.0, b = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// Oscillatory tail integrals by repeated integration by parts; the
// truncated remainder is O(Y^{1-s-depth}), negligible at the depths used.
double ss1(int s, double Y, int depth);

double cc1(int s, double Y, int depth) {  // int_Y^inf cos(u)/u^s du
    if (depth == 0) return 0.0;
    return -std::sin(Y) * std::pow(Y, -s) + s * ss1(s + 1, Y, depth - 1);
}

double ss1(int s, double Y, int depth) {  // int_Y^inf sin(u)/u^s du
    if (depth == 0) return 0.0;
    return std::cos(Y) * std::pow(Y, -s) - s * cc1(s + 1, Y, depth - 1);
}

// int_y^inf sinc^theta(x) dx via the harmonic expansion of sin^theta:
// the constant component integrates to a power law, each oscillatory
// component to a rapidly-decaying by-parts series.
double sinc_power_tail(int theta, double y) {
    constexpr int kDepth = 14;
    KahanSum acc;
    if (theta % 2 == 0) {
        const int q = theta / 2;
        const double scale = std::ldexp(1.0, -2 * q);  // 4^{-q}, exact
        acc.add(binomial(theta, q) * scale * std::pow(y, 1 - theta) /
                (theta - 1));
        for (int j = 0; j < q; ++j) {
            const int omega = 2 * (q - j);
            const double sign = ((q - j) % 2 == 0) ? 1.0 : -1.0;
            const double coef = 2.0 * scale * sign * binomial(theta, j);
            acc.add(coef * powi(omega, theta - 1) *
                    cc1(theta, omega * y, kDepth));
        }
    } else {
        const int q = (theta - 1) / 2;
        const double scale = std::ldexp(1.0, -2 * q);
        for (int j = 0; j <= q; ++j) {
            const int omega = theta - 2 * j;
            const double sign = ((j + q) % 2 == 0) ? 1.0 : -1.0;
            const double coef = scale * sign * binomial(theta, j);
            acc.add(coef * powi(omega, theta - 1) *
                    ss1(theta, omega * y, kDepth));
        }
    }
    return acc.value();
}

double lobe_integral(int theta, int k) {
    auto f = [theta](double x) { return powi(sinc(x), theta); };
    auto res = integrate_adaptive(f, k * M_PI, (k + 1) * M_PI, 0.0, 1e-14, 400);
    return res.value;
}

// Upper bound on |int_y^inf sinc^theta| from the 1/x^theta envelope.
double envelope_tail_bound(int theta, double y) {
    return std::pow(y, 1 - theta) / (theta - 1);
}

constexpr int kMaxLobes = 30;

}  // namespace

double sinc_power_integral(int theta) {
    if (theta < 1) throw std::invalid_argument("sinc integral: order < 1");
    if (theta == 1) return M_PI;  // conditionally convergent Dirichlet case
    KahanSum acc;
    int k = 0;
    for (; k < kMaxLobes; ++k) {
        acc.add(lobe_integral(theta, k));
        if (k >= 1 &&
            envelope_tail_bound(theta, (k + 1) * M_PI) <
                1e-13 * std::abs(acc.value()))
            break;
    }
    if (k == kMaxLobes)
        acc.add(sinc_power_tail(theta, kMaxLobes * M_PI));
    return 2.0 * acc.value();
}

double side_lobe_area(int theta) {
    if (theta < 2)
        throw std::invalid_argument("side lobe area: need theta >= 2");
    const double main_lobe = lobe_integral(theta, 0);
    KahanSum side;
    int k = 1;
    for (; k < kMaxLobes; ++k) {
        side.add(lobe_integral(theta, k));
        if (envelope_tail_bound(theta, (k + 1) * M_PI) <
            1e-13 * std::abs(side.value()))
            break;
    }
    if (k == kMaxLobes) side.add(sinc_power_tail(theta, kMaxLobes * M_PI));
    // side/(main+side) rather than 1 - main/total: keeps relative precision
    // when the side area is ~1e-40 at large theta.
    return side.value() / (main_lobe + side.value());
}

double alpha_theta(const WindowSpec& spec) {
    return M_PI / (spec.delta_e() * sinc_power_integral(spec.theta));
}

double window_energy_kernel(const WindowSpec& spec, double E) {
    const double arg = M_PI * E / spec.delta_e();
    return alpha_theta(spec) * powi(sinc(arg), spec.theta);
}

double lemma_constant_c() {
    static const double c = std::exp(-1.0) *
                            std::pow(1.0 - 6.0 / (M_PI * M_PI),
                                     -M_PI * M_PI / 6.0) /
                            std::erf(1.0);
    return c;
}

LemmaBounds lemma_bounds(int theta, double delta_e) {
    if (theta < 1) throw std::invalid_argument("lemma bounds: order < 1");
    const double c = lemma_constant_c();
    const double root = std::sqrt(theta / (6.0 * M_PI));
    LemmaBounds b;
    b.alpha_bound = c * M_PI / delta_e * root;
    b.a_side_bound = c * std::pow(M_PI, 3 - theta) * root;
    return b;
}

}  // namespace spinspec

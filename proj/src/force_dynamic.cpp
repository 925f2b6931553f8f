// Eddy-current force. With tau' = tau - t_i and b(l) = gamma (tau' + l)/W_P^2,
//   f = P / z^3 int_0^tau' dl sin W(tau' - l) G(l),
//   G(l) = int_0^inf dk k^3 coth(beta k/2) e^{-b k^2},
//   P = -(3/32 pi^2) alpha0 W gamma^2 / W_P^4.
// W tau' is ~1e9 in the regimes of interest, so the l integral is done per
// panel on a Chebyshev interpolant of G, integrated against the sine exactly
// by repeated integration by parts.

#include <array>
#include <cmath>
#include <numbers>

#include "noneqcp/errors.hpp"
#include "noneqcp/force.hpp"
#include "noneqcp/thermal.hpp"
#include "noneqcp/units.hpp"

namespace noneqcp {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int cheb_degree = 12;
constexpr int panels = 8;

// Substituting k = x / sqrt(b): G = b^-2 int_0^8 dx x^2 [x coth(beta x/(2 sqrt b))] e^{-x^2}.
double eddy_kernel(double b, double beta, const QuadOptions& opt) {
    const double beta_x = beta / std::sqrt(b);
    auto f = [&](double x) { return x * x * omega_coth_half(beta_x, x) * std::exp(-x * x); };
    return integrate(f, {0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0}, opt).value / (b * b);
}

using Cheb = std::array<double, cheb_degree + 1>;

template <class F>
Cheb chebyshev_fit(F&& f, double a, double b) {
    constexpr int n = cheb_degree + 1;
    std::array<double, n> vals{};
    for (int k = 0; k < n; ++k) {
        const double x = std::cos(pi * (k + 0.5) / n);
        vals[k] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
    }
    Cheb c{};
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += vals[k] * std::cos(pi * j * (k + 0.5) / n);
        c[j] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    return c;
}

// Coefficients of d/dx of a Chebyshev series on [-1, 1].
Cheb chebyshev_derivative(const Cheb& c) {
    Cheb d{};
    for (int n = cheb_degree; n >= 1; --n) {
        const double next = n + 1 <= cheb_degree ? d[n + 1] : 0.0;
        d[n - 1] = next + 2.0 * n * c[n];
    }
    d[0] *= 0.5;
    return d;
}

// int_a^b sin(W (t - l)) p(l) dl for the polynomial p given by c on [a, b]:
// sum_j (-1)^j [S_{j+1} p^(j)]_a^b with S_1 = cos(phi)/W, S_2 = -sin(phi)/W^2,
// S_3 = -cos(phi)/W^3, S_4 = sin(phi)/W^4, ..., phi = W (t - l).
double sine_moment(Cheb c, double a, double b, double W, double t) {
    const double ca = std::cos(W * (t - a)), sa = std::sin(W * (t - a));
    const double cb = std::cos(W * (t - b)), sb = std::sin(W * (t - b));
    const double jac = 2.0 / (b - a);
    double scale = 1.0, total = 0.0, Wpow = W;
    for (int j = 0; j <= cheb_degree; ++j) {
        double p_a = 0.0, p_b = 0.0;
        for (int n = 0; n <= cheb_degree; ++n) {
            p_b += c[n];
            p_a += (n % 2 == 0 ? 1.0 : -1.0) * c[n];
        }
        p_a *= scale;
        p_b *= scale;
        double Sa = 0.0, Sb = 0.0;
        switch (j % 4) {
            case 0: Sa = ca; Sb = cb; break;
            case 1: Sa = -sa; Sb = -sb; break;
            case 2: Sa = -ca; Sb = -cb; break;
            case 3: Sa = sa; Sb = sb; break;
        }
        const double term = (Sb * p_b - Sa * p_a) / Wpow;
        total += (j % 2 == 0 ? 1.0 : -1.0) * term;
        c = chebyshev_derivative(c);
        scale *= jac;
        Wpow *= W;
    }
    return total;
}

}  // namespace

DynamicForce dyn_eddy_force_integral(const Scenario& s, const ForceOptions& o) {
    s.validate();
    const MediumParams& m = s.medium;
    if (m.model != DielectricModel::drude) throw DomainError("dyn_eddy_force_integral: the eddy mode needs a Drude medium");
    DynamicForce out;
    const double tau = units::seconds_to_inv_eV(s.tau - s.t_i);
    const double z = units::meters_to_inv_eV(s.z);
    const double W = s.atom.resonance, WP2 = m.plasma_freq * m.plasma_freq, g = m.damping;
    if (g * tau < 100.0) out.warnings.push_back("gamma*tau < 100: the eddy-mode approximation is not yet accurate");
    if (m.plasma_freq * z < 10.0) out.warnings.push_back("W_P*z < 10: outside the far-from-surface regime");
    if (tau <= 0.0) return out;

    const double beta = inverse_temperature(s.field_temperature);
    QuadOptions qi;
    qi.rel_tol = std::min(1e-11, 0.01 * o.rel_tol);
    qi.max_intervals = o.max_intervals;
    auto G = [&](double l) { return eddy_kernel(g * (tau + l) / WP2, beta, qi); };

    double sum = 0.0;
    const double h = tau / panels;
    for (int i = 0; i < panels; ++i) {
        const double a = i * h, b = (i + 1) * h;
        if (W * h < 50.0) {
            QuadOptions qo;
            qo.rel_tol = o.rel_tol;
            qo.max_intervals = o.max_intervals;
            sum += integrate([&](double l) { return std::sin(W * (tau - l)) * G(l); }, a, b, qo).value;
        } else {
            sum += sine_moment(chebyshev_fit(G, a, b), a, b, W, tau);
        }
    }
    const double P = -3.0 / (32.0 * pi * pi) * s.atom.alpha0 * W * g * g / (WP2 * WP2);
    out.value = units::eV2_to_newtons(P / (z * z * z) * sum);
    return out;
}

DynamicClosedForm dyn_eddy_force_closed(const Scenario& s) {
    s.validate();
    DynamicClosedForm out;
    const double tau = units::seconds_to_inv_eV(s.tau - s.t_i);
    if (tau <= 0.0) return out;
    const double z = units::meters_to_inv_eV(s.z);
    const double T = units::kelvin_to_eV(s.field_temperature);
    const MediumParams& m = s.medium;
    const double C = 3.0 * s.atom.alpha0 / (64.0 * std::pow(pi, 1.5)) * std::sqrt(m.damping) / m.plasma_freq * T /
                     (z * z * z) / (tau * std::sqrt(tau));
    const double mean_coef = 1.0 / (2.0 * std::numbers::sqrt2);
    out.value = units::eV2_to_newtons(-C * (mean_coef - std::cos(s.atom.resonance * tau)));
    out.mean = units::eV2_to_newtons(-C * mean_coef);
    out.envelope_upper = units::eV2_to_newtons(-C * (mean_coef - 1.0));
    out.envelope_lower = units::eV2_to_newtons(-C * (mean_coef + 1.0));
    return out;
}

}  // namespace noneqcp

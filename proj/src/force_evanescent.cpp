// Real-frequency evanescent-wave integrals (q > 1) and the nonequilibrium
// correction. Inner integrals use u = sqrt(q^2 - 1), so q dq = u du and the
// evanescent envelope is exp(-2 z w u).

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noneqcp/errors.hpp"
#include "noneqcp/force.hpp"
#include "noneqcp/thermal.hpp"
#include "noneqcp/units.hpp"

namespace noneqcp {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

double omega_max(const Scenario& s, double z) {
    return std::max({20.0 * s.atom.resonance, 20.0 * s.medium.plasma_freq, 40.0 / (2.0 * z)});
}

// Breakpoints for the u integral: around the surface-plasmon pole
// u^2 = -1/(eps + 1), the envelope scale 1/(2 z w) and q^2 ~ |eps|.
std::vector<double> u_points(cplx eps, double omega, double z, double u_max) {
    std::vector<double> pts{0.0, u_max};
    const cplx u2 = -1.0 / (eps + 1.0);
    if (u2.real() > 0.0) {
        const double u_sp = std::sqrt(u2.real());
        for (double f : {0.5, 0.9, 1.0, 1.1, 2.0}) pts.push_back(f * u_sp);
    }
    const double u_env = 1.0 / (2.0 * z * omega);
    for (double f : {0.1, 1.0, 5.0}) pts.push_back(f * u_env);
    // medium-side wave vector turns over near q^2 ~ |eps|
    const double u_eps = std::sqrt(std::abs(eps));
    for (double f : {0.3, 1.0, 3.0}) pts.push_back(f * u_eps);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double x) { return x < 0.0 || x > u_max; }), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double u_max_for(double omega, double z) {
    const double q_max = evanescent_q_max(omega, z);
    return std::sqrt((q_max - 1.0) * (q_max + 1.0));
}

// int_1^qmax dq q sqrt(q^2-1) S(q) B(q) e^{-2 z w sqrt(q^2-1)}
double closed_inner(const MediumParams& m, double omega, double z, const QuadOptions& opt) {
    const cplx eps = epsilon(m, omega);
    const double u_max = u_max_for(omega, z);
    auto f = [&](double u) {
        const double q = std::sqrt(1.0 + u * u);
        return u * u * evanescent_root(eps, q) * evanescent_bracket(eps, q) * std::exp(-2.0 * z * omega * u);
    };
    return integrate(f, u_points(eps, omega, z, u_max), opt).value;
}

// int_1^qmax dq q Im{[R_TE + R_TM (k^2 - k_z^2)/w^2] e^{2 i k_z z}}
double reflection_inner(const MediumParams& m, double omega, double z, const QuadOptions& opt) {
    const cplx eps = epsilon(m, omega);
    const double u_max = u_max_for(omega, z);
    auto f = [&](double u) { return u * reflection_integrand_evanescent(eps, omega, u, z).imag(); };
    return integrate(f, u_points(eps, omega, z, u_max), opt).value;
}

// int_0^w_max g(w) dw where g carries Re alpha with its near-pole at Omega.
// A symmetric window around Omega is folded, g(W + x) + g(W - x), so the
// principal-value cancellation happens pointwise.
template <class G>
double fold_integral(G&& g, double W, double w_max, std::vector<double> breaks, const QuadOptions& opt) {
    double folded = 0.0;
    double lo_end = w_max, hi_start = w_max;
    if (W < w_max) {
        const double half = std::min(0.5 * W, w_max - W);
        lo_end = W - half;
        hi_start = W + half;
        auto h = [&](double x) { return g(W + x) + g(W - x); };
        folded = integrate(h, {0.0, 1e-4 * half, 1e-2 * half, half}, opt).value;
    }
    auto add = [&](double a, double b) {
        if (b <= a) return 0.0;
        std::vector<double> pts{a};
        for (double x : breaks)
            if (x > a && x < b) pts.push_back(x);
        pts.push_back(b);
        return integrate(g, pts, opt).value;
    };
    std::sort(breaks.begin(), breaks.end());
    return add(0.0, lo_end) + folded + add(hi_start, w_max);
}

std::vector<double> omega_breaks(const Scenario& s, double T_max) {
    const MediumParams& m = s.medium;
    const double W2 = m.plasma_freq * m.plasma_freq, wt2 = m.resonance * m.resonance;
    const double w_sp = std::sqrt(wt2 + 0.5 * W2);
    const double w_bulk = std::sqrt(wt2 + W2);
    std::vector<double> b{w_sp * 0.9, w_sp * 0.99, w_sp, w_sp * 1.01, w_sp * 1.1, w_bulk};
    if (m.resonance > 0) b.push_back(m.resonance);
    if (T_max > 0)
        for (double f : {1.0, 5.0, 20.0}) b.push_back(f * T_max);
    return b;
}

QuadOptions inner_options(const ForceOptions& o) {
    QuadOptions q;
    q.rel_tol = std::min(1e-10, 0.01 * o.rel_tol);
    q.max_intervals = o.max_intervals;
    return q;
}

QuadOptions outer_options(const ForceOptions& o) {
    QuadOptions q;
    q.rel_tol = o.rel_tol;
    q.max_intervals = o.max_intervals;
    return q;
}

template <class Inner>
double evanescent_force(const Scenario& s, double temperature, double prefactor, Inner&& inner,
                        const ForceOptions& o) {
    s.validate();
    const double z = units::meters_to_inv_eV(s.z);
    const double beta = inverse_temperature(temperature);
    const QuadOptions qi = inner_options(o);
    auto g = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double w2 = w * w;
        return w2 * w2 * polarizability(s.atom, w).real() * coth_half(beta, w) * inner(s.medium, w, z, qi);
    };
    const double T = units::kelvin_to_eV(temperature);
    const double f = prefactor * fold_integral(g, s.atom.resonance, omega_max(s, z), omega_breaks(s, T), outer_options(o));
    return units::eV2_to_newtons(f);
}

}  // namespace

double ew_force(const Scenario& s, double temperature, const ForceOptions& o) {
    return evanescent_force(s, temperature, -sqrt2 / pi, closed_inner, o);
}

double ew_force_from_reflection(const Scenario& s, double temperature, const ForceOptions& o) {
    return evanescent_force(s, temperature, -1.0 / pi, reflection_inner, o);
}

NeqCorrection neq_correction(const Scenario& s, const ForceOptions& o) {
    s.validate();
    NeqCorrection out;
    const double T_M = s.medium.temperature, T_E = s.field_temperature;
    if (T_M == T_E) return out;

    const double z = units::meters_to_inv_eV(s.z);
    const double b_M = inverse_temperature(T_M), b_E = inverse_temperature(T_E);
    const double T_max = units::kelvin_to_eV(std::max(T_M, T_E));
    const QuadOptions qi = inner_options(o);

    // Evanescent part: thermal weight coth(b_M w/2) - coth(b_E w/2) cuts the
    // frequency range off at ~80 T_max.
    auto g = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double w2 = w * w;
        return w2 * w2 * polarizability(s.atom, w).real() * coth_half_difference(b_M, b_E, w) *
               closed_inner(s.medium, w, z, qi);
    };
    const double w_cut = std::min(omega_max(s, z), 80.0 * T_max);
    out.ew = units::eV2_to_newtons(-sqrt2 / pi *
                                   fold_integral(g, s.atom.resonance, w_cut, omega_breaks(s, T_max), outer_options(o)));

    // Propagating part: Im alpha -> (pi/2) alpha0 W delta(w - W).
    const double W = s.atom.resonance;
    const cplx eps = epsilon(s.medium, W);
    auto h = [&](double th) {
        const double q = std::sin(th), c = std::cos(th);
        return q * c * c * evanescent_root(eps, q) * propagating_bracket(eps, q);
    };
    const double J = integrate(h, 0.0, 0.5 * pi, qi).value;
    const double W4 = W * W * W * W;
    out.pw = units::eV2_to_newtons(sqrt2 / pi * polarizability_delta_weight(s.atom) * W4 *
                                   coth_half_difference(b_M, b_E, W) * J);
    out.achieved_tolerance = o.rel_tol;
    return out;
}

}  // namespace noneqcp

// Equilibrium force. The real-frequency integral
//   f = -(1/pi) int_0^inf dw w^2 coth(beta w/2) Im[alpha(w) F(w)]
// is rotated onto the Matsubara frequencies xi_n = 2 pi n T, where the
// reflection coefficients are real and smooth:
//   f = 2T sum'_n xi_n^2 alpha(i xi_n) F(i xi_n).

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

struct Matsubara {
    const MediumParams& medium;
    const AtomParams& atom;
    double z;
    QuadOptions inner;

    // Static TM reflection: 1 for conductors, (e0 - 1)/(e0 + 1) otherwise.
    double r_tm_static() const {
        if (medium.resonance == 0.0) return 1.0;
        const double e0 = 1.0 + medium.plasma_freq * medium.plasma_freq / (medium.resonance * medium.resonance);
        return (e0 - 1.0) / (e0 + 1.0);
    }

    // xi^2 alpha(i xi) F(i xi) = -alpha int_xi^inf dkappa kappa e^{-2 kappa z}
    //                            [(2 kappa^2 - xi^2) r_p - xi^2 r_s]
    double term(double xi) const {
        if (xi == 0.0) return -0.75 * atom.alpha0 * r_tm_static() / std::pow(z, 4);
        const double alpha = polarizability(atom, cplx(0.0, xi)).real();
        const double em1 = epsilon(medium, cplx(0.0, xi)).real() - 1.0;
        const double eps = 1.0 + em1;
        const double xi2 = xi * xi;
        auto f = [&](double t) {
            const double kappa = xi + t / (2.0 * z);
            const double k2 = kappa * kappa;
            const double km = std::sqrt(k2 + em1 * xi2);
            const double r_s = -em1 * xi2 / ((kappa + km) * (kappa + km));
            const double r_p = (eps * kappa - km) / (eps * kappa + km);
            return kappa * ((2.0 * k2 - xi2) * r_p - xi2 * r_s) * std::exp(-t);
        };
        const auto r = integrate(f, {0.0, 2.0, 8.0, 25.0, 70.0}, inner);
        return -alpha * std::exp(-2.0 * xi * z) * r.value / (2.0 * z);
    }
};

}  // namespace

double equilibrium_force(const Scenario& s, double temperature, const ForceOptions& o) {
    s.validate();
    const double z = units::meters_to_inv_eV(s.z);
    QuadOptions inner;
    inner.rel_tol = std::min(1e-10, 0.01 * o.rel_tol);
    inner.max_intervals = o.max_intervals;
    const Matsubara m{s.medium, s.atom, z, inner};

    const double scale = std::max({s.atom.resonance, s.medium.plasma_freq, s.medium.resonance});
    auto tail = [&](double from) {
        // Smooth beyond the last explicit term: integrate with breakpoints on a
        // geometric ladder up to where e^{-2 xi z} is negligible.
        const double to = from + 40.0 / z;
        std::vector<double> pts{from};
        double x = std::max(from, 1e-3 * scale);
        while (x * 4.0 < to) {
            x *= 4.0;
            if (x > from) pts.push_back(x);
        }
        pts.push_back(to);
        QuadOptions opt = inner;
        opt.rel_tol = std::min(1e-9, 0.1 * o.rel_tol);
        return integrate([&](double xi) { return m.term(xi); }, pts, opt).value / pi;
    };

    double f = 0.0;
    if (temperature <= 0.0) {
        f = tail(0.0);
    } else {
        const double T = units::kelvin_to_eV(temperature);
        const double step = 2.0 * pi * T;
        const double xi_cut = std::min(20.0 / z, 40.0 * scale);
        const double n_wanted = std::ceil(xi_cut / step);
        const long n_terms = static_cast<long>(std::clamp(n_wanted, 1.0, 20000.0));
        double sum = 0.5 * m.term(0.0);
        for (long n = 1; n < n_terms; ++n) sum += m.term(n * step);
        f = 2.0 * T * sum + tail(n_terms * step - 0.5 * step);
    }
    return units::eV2_to_newtons(f);
}

double dipole_force(const Scenario& s, double temperature, const ForceOptions& o) {
    s.validate();
    const double z = units::meters_to_inv_eV(s.z);
    const double W = s.atom.resonance;
    QuadOptions opt;
    opt.rel_tol = std::min(1e-10, 0.01 * o.rel_tol);
    opt.max_intervals = o.max_intervals;
    const cplx F = reflected_trace(s.medium, W, z, opt);
    const double f = -0.5 * s.atom.alpha0 * W * W * W * coth_half(inverse_temperature(temperature), W) * F.real();
    return units::eV2_to_newtons(f);
}

}  // namespace noneqcp

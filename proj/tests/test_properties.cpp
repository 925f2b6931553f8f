#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "noneqcp/force.hpp"
#include "noneqcp/halfspace.hpp"
#include "noneqcp/medium.hpp"
#include "noneqcp/thermal.hpp"

using namespace noneqcp;
using doctest::Approx;

namespace {

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    double log_uniform(double a, double b) { return a * std::pow(b / a, uniform(0.0, 1.0)); }

    MediumParams medium() {
        const double W = log_uniform(1.0, 20.0), g = log_uniform(1e-3, 1.0), T = uniform(0.0, 600.0);
        if (uniform(0.0, 1.0) < 0.5) return MediumParams::drude(W, g, T);
        return MediumParams::lorentz(W, g, log_uniform(0.05, 10.0), T);
    }
};

}  // namespace

TEST_CASE("random media: passivity, reality and kernel consistency") {
    Sampler s(1);
    for (int n = 0; n < 200; ++n) {
        const MediumParams p = s.medium();
        const double w = s.log_uniform(1e-3, 1e2);
        const cplx e = epsilon(p, w);
        CHECK(e.imag() > 0.0);
        CHECK(epsilon(p, -w) == std::conj(e));
        const cplx g = matter_gret_omega(p, w);
        CHECK(std::abs(1.0 + p.plasma_freq * p.plasma_freq * g - e) <= 1e-14 * std::abs(e));
        CHECK(medium_hadamard_from_noise(p, w) == Approx(medium_hadamard_steady(p, w)).epsilon(1e-12));
        CHECK(matter_gret_time(p, -s.uniform(0.0, 10.0)) == 0.0);
    }
}

TEST_CASE("random waves: branch rules and amplitude constraint") {
    Sampler s(2);
    for (int n = 0; n < 500; ++n) {
        const MediumParams p = s.medium();
        const double w = s.log_uniform(1e-2, 50.0);
        const double q = s.uniform(0.0, 5.0);
        const cplx eps = epsilon(p, w);
        const WaveDecomposition d = wave_decompose(w, q * w, eps);
        CHECK(d.k_z.imag() >= 0.0);
        CHECK(d.K_z.imag() >= 0.0);
        if (q < 1.0) CHECK(d.k_z.imag() == 0.0);
        if (q > 1.0) CHECK(d.k_z.real() == 0.0);
        const FresnelSet f = fresnel_right(p, w, q * w);
        CHECK(std::abs(1.0 + f.r_te - f.t_te) <= 1e-12);
        if (q < 1.0) {
            CHECK(std::abs(f.r_te) <= 1.0);
            CHECK(std::abs(f.r_tm) <= 1.0);
        } else if (q > 1.0) {
            const ImFresnel im = im_fresnel_evanescent(eps, w, q);
            CHECK(im.im_r_te == Approx(f.r_te.imag()).epsilon(1e-10));
            CHECK(im.im_r_tm == Approx(f.r_tm.imag()).epsilon(1e-10));
            CHECK(im.im_r_te >= 0.0);
            CHECK(im.im_r_tm >= 0.0);
        }
    }
}

TEST_CASE("random media: pole stability and residue sum") {
    Sampler s(3);
    for (int n = 0; n < 200; ++n) {
        const MediumParams p = s.medium();
        const double k = s.log_uniform(1e-3, 1e2);
        const PoleSet ps = dispersion_poles(p, k);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < ps.poles.size(); ++i) {
            CHECK(ps.poles[i].real() < 0.0);
            CHECK(ps.k_z[i].imag() > 0.0);
            sum += ps.residues[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("coth difference is antisymmetric in the temperatures") {
    Sampler s(4);
    for (int n = 0; n < 200; ++n) {
        const double b1 = 1.0 / s.log_uniform(1e-3, 0.1), b2 = 1.0 / s.log_uniform(1e-3, 0.1);
        const double w = s.log_uniform(1e-4, 2.0);
        CHECK(coth_half_difference(b1, b2, w) == -coth_half_difference(b2, b1, w));
    }
}

TEST_CASE("random scenarios: steady state at equal temperatures is the equilibrium force") {
    Sampler s(5);
    for (int n = 0; n < 5; ++n) {
        Scenario sc;
        sc.medium = s.medium();
        sc.field_temperature = sc.medium.temperature;
        sc.z = s.log_uniform(1e-7, 5e-6);
        const double eq = ff_force(sc, sc.field_temperature, {}, false).total;
        CHECK(std::isfinite(eq));
        CHECK(steady_total_force(sc).total == eq);
    }
}

TEST_CASE("forces are stable under halving of the quadrature tolerance") {
    Scenario hot;
    hot.medium.temperature = 400.0;
    hot.z = 2e-6;
    for (double tol : {1e-6, 1e-8}) {
        ForceOptions a, b;
        a.rel_tol = tol;
        b.rel_tol = 0.5 * tol;
        auto stable = [&](double x, double y) {
            CHECK(std::isfinite(x));
            CHECK(std::isfinite(y));
            CHECK(std::signbit(x) == std::signbit(y));
            CHECK(std::abs(x - y) <= 10.0 * tol * std::abs(y));
        };
        stable(equilibrium_force(hot, 295, a), equilibrium_force(hot, 295, b));
        stable(ew_force(hot, 295, a), ew_force(hot, 295, b));
        stable(dipole_force(hot, 295, a), dipole_force(hot, 295, b));
        stable(neq_correction(hot, a).ew, neq_correction(hot, b).ew);
        stable(dyn_eddy_force_integral(hot, a).value, dyn_eddy_force_integral(hot, b).value);
    }
}

TEST_CASE("repeated evaluations are bit-identical") {
    Scenario sc;
    sc.medium.temperature = 350.0;
    sc.z = 1.5e-6;
    CHECK(neq_correction(sc).ew == neq_correction(sc).ew);
    CHECK(ew_force(sc, 295) == ew_force(sc, 295));
    CHECK(dyn_eddy_force_integral(sc).value == dyn_eddy_force_integral(sc).value);
}

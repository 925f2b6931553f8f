#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "noneqcp/errors.hpp"
#include "noneqcp/force.hpp"
#include "noneqcp/units.hpp"

using namespace noneqcp;
using doctest::Approx;

// Frozen reference forces (newtons) from tests/oracle/derive_values.py, which
// evaluates the Matsubara sum with mpmath and the real-frequency integrals with
// QUADPACK principal-value and Fourier weights.
namespace ref {
constexpr double eq_1um_295 = -6.5867854532331016e-25;
constexpr double eq_1um_0 = -6.5891824705211711e-25;
constexpr double eq_100nm_295 = -2.6783163121744605e-20;
constexpr double dipole_1um_295 = -1.3788547968297056e-21;
constexpr double ew_1um_0 = 8.5996463407161684e-24;
constexpr double ew_1um_295 = 8.5995809957601832e-24;
constexpr double neq_ew_2um_400_295 = -2.0085900449390978e-29;
constexpr double neq_pw_400_295 = 6.5505330528771344e-42;
}  // namespace ref

namespace {

Scenario at(double z, double T = 295.0) {
    Scenario s;
    s.z = z;
    s.field_temperature = T;
    s.medium.temperature = T;
    return s;
}

Scenario transparent(double z) {
    Scenario s = at(z);
    s.medium = MediumParams::lorentz(1e-300, 0.0357, 1.0, 295);
    return s;
}

}  // namespace

TEST_CASE("polarizability limits") {
    const AtomParams a = AtomParams::rubidium();
    CHECK(polarizability(a, 0.0).real() == a.alpha0);
    const double w = 1e4 * a.resonance;
    CHECK(polarizability(a, w).real() == Approx(-a.alpha0 * a.resonance * a.resonance / (w * w)).epsilon(1e-7));
    CHECK(a.alpha0 == Approx(6.1560442134698851e-09).epsilon(1e-14));
    CHECK(a.resonance == Approx(1.5467980987150001e+00).epsilon(1e-15));
    CHECK(a.linewidth == Approx(1e-6 * a.resonance));
    CHECK(polarizability_delta_weight(a) == Approx(0.5 * std::numbers::pi * a.alpha0 * a.resonance));
    AtomParams sharp = a;
    sharp.linewidth = 0.0;
    CHECK_THROWS_AS(polarizability(sharp, a.resonance), DomainError);
    // Im alpha integrates to the delta weight as the linewidth shrinks
    CHECK(polarizability(a, a.resonance).imag() * 0.5 * std::numbers::pi * a.linewidth ==
          Approx(polarizability_delta_weight(a)).epsilon(1e-6));
}

TEST_CASE("scenario invariants") {
    Scenario s;
    CHECK_NOTHROW(s.validate());
    s.z = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = Scenario{};
    s.tau = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = Scenario{};
    s.atom.alpha0 = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("equilibrium force against the Matsubara oracle") {
    CHECK(equilibrium_force(at(1e-6), 295) == Approx(ref::eq_1um_295).epsilon(1e-7));
    CHECK(equilibrium_force(at(1e-6), 0) == Approx(ref::eq_1um_0).epsilon(1e-7));
    const double f100 = equilibrium_force(at(1e-7), 295);
    CHECK(f100 == Approx(ref::eq_100nm_295).epsilon(1e-7));
    CHECK(f100 < 0.0);
}

TEST_CASE("transparent medium exerts no force") {
    const Scenario s = transparent(1e-6);
    CHECK(equilibrium_force(s, 295) == 0.0);
    CHECK(ew_force(s, 295) == 0.0);
    CHECK(dipole_force(s, 295) == 0.0);
}

TEST_CASE("near-zone van der Waals slope at zero temperature") {
    const double z1 = 1e-9, z2 = 5e-9;
    const double f1 = equilibrium_force(at(z1, 0), 0);
    const double f2 = equilibrium_force(at(z2, 0), 0);
    const double slope = std::log(std::abs(f2 / f1)) / std::log(z2 / z1);
    CHECK(slope == Approx(-4.0).epsilon(0.1 / 4.0));
}

TEST_CASE("dipole part against the oracle") {
    CHECK(dipole_force(at(1e-6), 295) == Approx(ref::dipole_1um_295).epsilon(1e-7));
}

TEST_CASE("evanescent part against the principal-value oracle") {
    CHECK(ew_force(at(1e-6, 0), 0) == Approx(ref::ew_1um_0).epsilon(1e-7));
    CHECK(ew_force(at(1e-6), 295) == Approx(ref::ew_1um_295).epsilon(1e-7));
}

TEST_CASE("closed evanescent form equals the evanescent split") {
    const Scenario cases[] = {at(1e-7), at(1e-6), at(3e-6, 400)};
    for (const Scenario& s : cases) {
        const double closed = ew_force(s, s.field_temperature);
        const EquilibriumForce f = ff_force(s, s.field_temperature);
        CHECK(f.ew == Approx(closed).epsilon(1e-6));
        CHECK(f.dipole + f.ew + f.pw == Approx(f.total).epsilon(1e-12));
    }
}

TEST_CASE("split can be skipped") {
    const EquilibriumForce f = ff_force(at(1e-6), 295, {}, false);
    CHECK(f.total == equilibrium_force(at(1e-6), 295));
    CHECK(f.ew == 0.0);
    CHECK(f.dipole == 0.0);
}

TEST_CASE("nonequilibrium correction against the oracle") {
    Scenario s = at(2e-6);
    s.medium.temperature = 400;
    const NeqCorrection n = neq_correction(s);
    CHECK(n.ew == Approx(ref::neq_ew_2um_400_295).epsilon(1e-6));
    CHECK(n.pw == Approx(ref::neq_pw_400_295).epsilon(1e-8));
    // the propagating part does not depend on distance
    s.z = 4e-6;
    CHECK(neq_correction(s).pw == n.pw);
}

TEST_CASE("equal temperatures give an exactly vanishing correction") {
    for (double T : {0.0, 77.0, 295.0, 1000.0}) {
        const NeqCorrection n = neq_correction(at(1e-6, T));
        CHECK(n.ew == 0.0);
        CHECK(n.pw == 0.0);
    }
}

TEST_CASE("steady state composition") {
    const Scenario eq = at(1e-6);
    const ForceBreakdown b = steady_total_force(eq);
    CHECK(b.total == equilibrium_force(eq, 295));
    CHECK(b.total == ff_force(eq, 295).total);

    Scenario hot = at(5e-6);
    hot.medium.temperature = 400;
    const ForceBreakdown h = steady_total_force(hot, {}, true);
    double sum = 0.0;
    for (Component c : h.summed) sum += h.components.at(c);
    CHECK(sum == h.total);
    CHECK(h.components.at(Component::neq_ew) < 0.0);
    CHECK(std::abs(h.total) > std::abs(equilibrium_force(hot, 295)));
    CHECK(h.components.count(Component::ff_ew) == 1);
    const double parts = h.components.at(Component::ff_pw) + h.components.at(Component::ff_ew) + dipole_force(hot, 295);
    CHECK(parts == Approx(h.components.at(Component::eq)).epsilon(1e-12));
}

TEST_CASE("component names") {
    CHECK(to_string(Component::eq) == "eq");
    CHECK(to_string(Component::dyn_eddy) == "dyn_eddy");
}

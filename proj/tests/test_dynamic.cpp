#include <doctest.h>

#include <cmath>
#include <numbers>

#include "noneqcp/errors.hpp"
#include "noneqcp/force.hpp"
#include "noneqcp/units.hpp"

using namespace noneqcp;
using doctest::Approx;

namespace {

Scenario dyn(double z, double tau, double T = 295.0) {
    Scenario s;
    s.z = z;
    s.tau = tau;
    s.field_temperature = T;
    s.medium.temperature = T;
    return s;
}

}  // namespace

TEST_CASE("integral form against the QUADPACK Fourier-weight oracle") {
    // tests/oracle/derive_values.py
    CHECK(dyn_eddy_force_integral(dyn(1e-6, 1e-6)).value == Approx(-1.3367901689323565e-42).epsilon(1e-6));
    CHECK(dyn_eddy_force_integral(dyn(1e-6, 2e-6)).value == Approx(-1.3893068583628554e-42).epsilon(1e-6));
}

TEST_CASE("integral form scales as the inverse cube of distance") {
    const double a = dyn_eddy_force_integral(dyn(1e-6, 1e-6)).value;
    const double b = dyn_eddy_force_integral(dyn(2e-6, 1e-6)).value;
    CHECK(b / a == Approx(0.125).epsilon(1e-14));
}

TEST_CASE("closed form scalings") {
    const DynamicClosedForm a = dyn_eddy_force_closed(dyn(1e-6, 1e-6, 295));
    const DynamicClosedForm t2 = dyn_eddy_force_closed(dyn(1e-6, 1e-6, 590));
    CHECK(t2.value / a.value == Approx(2.0).epsilon(1e-14));
    const DynamicClosedForm late = dyn_eddy_force_closed(dyn(1e-6, 4e-6));
    CHECK(late.mean / a.mean == Approx(0.125).epsilon(1e-14));
    const DynamicClosedForm far = dyn_eddy_force_closed(dyn(2e-6, 1e-6));
    CHECK(far.mean / a.mean == Approx(0.125).epsilon(1e-14));
    CHECK(a.mean < 0.0);
    CHECK(a.envelope_lower <= a.value);
    CHECK(a.value <= a.envelope_upper);
    CHECK(a.envelope_upper - a.mean == Approx(a.mean - a.envelope_lower).epsilon(1e-14));
}

TEST_CASE("closed form against the integral form") {
    for (double tau : {1e-6, 2e-6, 4e-6}) {
        const double integral = dyn_eddy_force_integral(dyn(1e-6, tau)).value;
        const double closed = dyn_eddy_force_closed(dyn(1e-6, tau)).value;
        CHECK(std::abs(closed - integral) <= 0.1 * std::abs(integral));
    }
}

TEST_CASE("empty time window gives zero") {
    Scenario s = dyn(1e-6, 1e-6);
    s.t_i = 1e-6;
    CHECK(dyn_eddy_force_integral(s).value == 0.0);
    CHECK(dyn_eddy_force_closed(s).value == 0.0);
    s.tau = 1e-6 + 1e-30;
    CHECK(std::abs(dyn_eddy_force_integral(s).value) < 1e-60);
}

TEST_CASE("short windows use the direct quadrature") {
    // W h < 50 on every panel
    Scenario s = dyn(1e-6, 1e-13);
    const DynamicForce f = dyn_eddy_force_integral(s);
    CHECK(std::isfinite(f.value));
    CHECK_FALSE(f.warnings.empty());
}

TEST_CASE("regime warnings") {
    CHECK(dyn_eddy_force_integral(dyn(1e-6, 1e-6)).warnings.empty());
    const DynamicForce short_time = dyn_eddy_force_integral(dyn(1e-6, 1e-12));
    REQUIRE(short_time.warnings.size() == 1);
    CHECK(short_time.warnings[0].find("gamma*tau") != std::string::npos);
    const DynamicForce near = dyn_eddy_force_integral(dyn(1e-10, 1e-6));
    REQUIRE(near.warnings.size() == 1);
    CHECK(near.warnings[0].find("W_P*z") != std::string::npos);
}

TEST_CASE("the eddy mode requires a Drude medium") {
    Scenario s = dyn(1e-6, 1e-6);
    s.medium = MediumParams::lorentz(8.9, 0.0357, 0.5, 295);
    CHECK_THROWS_AS(dyn_eddy_force_integral(s), DomainError);
    s.medium = MediumParams::plasma(8.9, 295);
    CHECK_THROWS_AS(dyn_eddy_force_integral(s), DomainError);
}

TEST_CASE("closed form oscillates at the atomic resonance") {
    const Scenario s = dyn(1e-6, 1e-6);
    const double W = s.atom.resonance;
    const double period = units::inv_eV_to_seconds(2 * std::numbers::pi / W);
    Scenario later = s;
    later.tau = s.tau + period;
    const DynamicClosedForm f0 = dyn_eddy_force_closed(s), f1 = dyn_eddy_force_closed(later);
    // one period later the cosine term repeats up to the slow tau^{-3/2} drift
    const double amplitude = f0.envelope_upper - f0.mean;
    CHECK(std::abs((f1.value - f1.mean) - (f0.value - f0.mean)) < 1e-5 * std::abs(amplitude));
}

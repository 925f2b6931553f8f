#include "noneqcp/force.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "noneqcp/errors.hpp"
#include "noneqcp/thermal.hpp"
#include "noneqcp/units.hpp"

namespace noneqcp {

AtomParams AtomParams::rubidium(double temperature) {
    AtomParams a;
    a.alpha0 = units::cubic_meters_to_inv_eV3(4.73e-29);
    a.resonance = units::angular_hz_to_eV(2.35e15);
    a.linewidth = 1e-6 * a.resonance;
    a.temperature = temperature;
    return a;
}

void AtomParams::validate() const {
    if (!(std::isfinite(alpha0) && alpha0 > 0)) throw DomainError("atom: static polarizability must be positive");
    if (!(std::isfinite(resonance) && resonance > 0)) throw DomainError("atom: resonance must be positive");
    if (!(std::isfinite(linewidth) && linewidth >= 0)) throw DomainError("atom: linewidth must be non-negative");
    if (!(std::isfinite(temperature) && temperature >= 0)) throw DomainError("atom: temperature must be non-negative");
}

cplx polarizability(const AtomParams& a, cplx omega) {
    const double W2 = a.resonance * a.resonance;
    const cplx den = W2 - omega * omega - cplx(0.0, a.linewidth) * omega;
    if (den == 0.0) {
        std::ostringstream msg;
        msg << "polarizability: evaluated on the undamped resonance omega = " << omega
            << " eV; use the delta-function weight for spectral integrals";
        throw DomainError(msg.str());
    }
    return a.alpha0 * W2 / den;
}

double polarizability_delta_weight(const AtomParams& a) { return 0.5 * std::numbers::pi * a.alpha0 * a.resonance; }

Scenario Scenario::gold_rubidium() { return Scenario{}; }

void Scenario::validate() const {
    medium.validate();
    atom.validate();
    if (!(std::isfinite(field_temperature) && field_temperature >= 0))
        throw DomainError("scenario: field temperature must be non-negative");
    if (!(std::isfinite(z) && z > 0)) throw DomainError("scenario: distance z must be positive");
    if (!(std::isfinite(tau) && std::isfinite(t_i) && tau >= t_i))
        throw DomainError("scenario: time tau must not precede t_i");
}

std::string to_string(Component c) {
    switch (c) {
        case Component::eq: return "eq";
        case Component::ff_ew: return "ff_ew";
        case Component::ff_pw: return "ff_pw";
        case Component::neq_ew: return "neq_ew";
        case Component::neq_pw: return "neq_pw";
        case Component::dyn_eddy: return "dyn_eddy";
    }
    return "unknown";
}

EquilibriumForce ff_force(const Scenario& s, double temperature, const ForceOptions& o, bool split) {
    EquilibriumForce f;
    f.total = equilibrium_force(s, temperature, o);
    f.achieved_tolerance = o.rel_tol;
    if (split) {
        f.dipole = dipole_force(s, temperature, o);
        f.ew = ew_force_from_reflection(s, temperature, o);
        f.pw = f.total - f.dipole - f.ew;
    }
    return f;
}

ForceBreakdown steady_total_force(const Scenario& s, const ForceOptions& o, bool split) {
    s.validate();
    ForceBreakdown b;
    const double eq = equilibrium_force(s, s.field_temperature, o);
    const NeqCorrection neq = neq_correction(s, o);
    b.components[Component::eq] = eq;
    b.components[Component::neq_ew] = neq.ew;
    b.components[Component::neq_pw] = neq.pw;
    b.summed = {Component::eq, Component::neq_ew, Component::neq_pw};
    b.total = 0.0;
    for (Component c : b.summed) b.total += b.components[c];
    if (split) {
        const double ew = ew_force_from_reflection(s, s.field_temperature, o);
        const double dip = dipole_force(s, s.field_temperature, o);
        b.components[Component::ff_ew] = ew;
        b.components[Component::ff_pw] = eq - dip - ew;
    }
    b.achieved_tolerance = std::max(o.rel_tol, neq.achieved_tolerance);
    return b;
}

}  // namespace noneqcp

#pragma once

#include <map>
#include <string>
#include <vector>

#include "noneqcp/halfspace.hpp"
#include "noneqcp/medium.hpp"

namespace noneqcp {

// Two-level-like oscillator atom. alpha0 in eV^-3, energies in eV.
struct AtomParams {
    double alpha0 = 0.0;
    double resonance = 0.0;
    double linewidth = 0.0;    // regularization eta for real-axis integrals
    double temperature = 295;  // recorded; the atom is taken to share the field temperature

    // alpha0 = 4.73e-29 m^3, Omega = 2.35e15 rad/s, eta = 1e-6 Omega.
    static AtomParams rubidium(double temperature = 295.0);
    void validate() const;
};

// alpha0 Omega^2 / (Omega^2 - w^2 - i eta w).
cplx polarizability(const AtomParams& a, cplx omega);
// Weight w0 of Im alpha(w) -> w0 delta(w - Omega) in the eta -> 0 limit.
double polarizability_delta_weight(const AtomParams& a);

// Geometry and times in SI; converted internally.
struct Scenario {
    MediumParams medium = MediumParams::gold();
    AtomParams atom = AtomParams::rubidium();
    double field_temperature = 295.0;  // K
    double z = 1e-6;                   // m
    double tau = 1e-6;                 // s
    double t_i = 0.0;                  // s

    static Scenario gold_rubidium();
    void validate() const;
};

struct ForceOptions {
    double rel_tol = 1e-8;
    std::size_t max_intervals = 4000;
};

enum class Component { eq, ff_ew, ff_pw, neq_ew, neq_pw, dyn_eddy };
std::string to_string(Component c);

// Forces in newtons; negative = toward the surface.
struct ForceBreakdown {
    double total = 0.0;
    std::map<Component, double> components;
    std::vector<Component> summed;  // the components whose ordered sum is `total`
    double achieved_tolerance = 0.0;
};

// Equilibrium force at temperature T split into field-fluctuation evanescent
// (ew) and propagating (pw) parts and the atom dipole-fluctuation part.
struct EquilibriumForce {
    double total = 0.0;
    double ew = 0.0;
    double pw = 0.0;
    double dipole = 0.0;
    double achieved_tolerance = 0.0;
};

// Full equilibrium (Lifshitz) force at temperature T, in newtons, from the
// imaginary-frequency representation of the real-frequency integral.
double equilibrium_force(const Scenario& s, double temperature, const ForceOptions& o = {});

// Atom dipole-fluctuation part, -(alpha0 Omega^3/2) coth(beta Omega/2) Re F(Omega).
double dipole_force(const Scenario& s, double temperature, const ForceOptions& o = {});

// Equilibrium force with its field-fluctuation split. With split = false only
// the total is computed.
EquilibriumForce ff_force(const Scenario& s, double temperature, const ForceOptions& o = {}, bool split = true);

// Evanescent field-fluctuation force from the closed q-integral form.
double ew_force(const Scenario& s, double temperature, const ForceOptions& o = {});

// The same evanescent part evaluated from the Fresnel reflection integrand.
double ew_force_from_reflection(const Scenario& s, double temperature, const ForceOptions& o = {});

struct NeqCorrection {
    double ew = 0.0;
    double pw = 0.0;
    double achieved_tolerance = 0.0;
};

// Medium at T_M, field at T_E.
NeqCorrection neq_correction(const Scenario& s, const ForceOptions& o = {});

// f(T_E) + [f_EW(T_M) - f_EW(T_E)] + f_neq_PW. With split = true the
// equilibrium field-fluctuation split at T_E is reported as detail.
ForceBreakdown steady_total_force(const Scenario& s, const ForceOptions& o = {}, bool split = false);

struct DynamicForce {
    double value = 0.0;
    std::vector<std::string> warnings;
};

// Eddy-current force from the reduced lambda/k double integral.
DynamicForce dyn_eddy_force_integral(const Scenario& s, const ForceOptions& o = {});

struct DynamicClosedForm {
    double value = 0.0;
    double mean = 0.0;
    double envelope_upper = 0.0;
    double envelope_lower = 0.0;
};

// Leading large-Omega tau form of the integral above.
DynamicClosedForm dyn_eddy_force_closed(const Scenario& s);

}  // namespace noneqcp

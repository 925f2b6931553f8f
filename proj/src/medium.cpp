#include "noneqcp/medium.hpp"

#include <cmath>
#include <sstream>

#include "noneqcp/errors.hpp"
#include "noneqcp/thermal.hpp"

namespace noneqcp {

std::string to_string(DielectricModel m) {
    switch (m) {
        case DielectricModel::lorentz: return "lorentz";
        case DielectricModel::drude: return "drude";
        case DielectricModel::plasma: return "plasma";
    }
    return "unknown";
}

DielectricModel dielectric_model_from_string(const std::string& s) {
    if (s == "lorentz") return DielectricModel::lorentz;
    if (s == "drude") return DielectricModel::drude;
    if (s == "plasma") return DielectricModel::plasma;
    throw ScenarioError("unknown dielectric model '" + s + "' (expected lorentz, drude or plasma)");
}

MediumParams MediumParams::lorentz(double plasma_freq, double damping, double resonance, double temperature) {
    MediumParams p{DielectricModel::lorentz, plasma_freq, damping, resonance, temperature};
    p.validate();
    return p;
}

MediumParams MediumParams::drude(double plasma_freq, double damping, double temperature) {
    MediumParams p{DielectricModel::drude, plasma_freq, damping, 0.0, temperature};
    p.validate();
    return p;
}

MediumParams MediumParams::plasma(double plasma_freq, double temperature) {
    MediumParams p{DielectricModel::plasma, plasma_freq, 0.0, 0.0, temperature};
    p.validate();
    return p;
}

void MediumParams::validate() const {
    auto bad = [](const std::string& what) { throw DomainError("medium: " + what); };
    if (!(std::isfinite(plasma_freq) && plasma_freq > 0)) bad("plasma frequency must be positive");
    if (!(std::isfinite(damping) && damping >= 0)) bad("damping must be non-negative");
    if (!(std::isfinite(resonance) && resonance >= 0)) bad("resonance must be non-negative");
    if (!(std::isfinite(temperature) && temperature >= 0)) bad("temperature must be non-negative");
    if (model == DielectricModel::drude && resonance != 0.0) bad("drude model requires zero resonance");
    if (model == DielectricModel::plasma && (resonance != 0.0 || damping != 0.0))
        bad("plasma model requires zero resonance and zero damping");
}

double MediumParams::beta() const { return inverse_temperature(temperature); }

cplx epsilon(const MediumParams& p, cplx omega) {
    const cplx denom = omega * (omega + cplx(0.0, p.damping)) - p.resonance * p.resonance;
    if (denom == 0.0) {
        std::ostringstream msg;
        msg << "permittivity pole at omega = " << omega << " eV (omega(omega + i gamma) = resonance^2)";
        throw DomainError(msg.str());
    }
    return 1.0 - p.plasma_freq * p.plasma_freq / denom;
}

namespace {

// Damped oscillator pieces continued through critical damping. w2 is
// wbar^2 = wt^2 - gamma^2/4 and may be negative (overdamped).
struct Oscillator {
    double w2;
    double gamma;

    bool small(double x) const { return std::abs(w2) * x * x < 1e-3; }

    // exp(-gamma*s/2) cos(wbar x)
    double damped_cos(double x, double s) const {
        if (small(x)) {
            const double u = w2 * x * x;
            return std::exp(-0.5 * gamma * s) * (1 - u / 2 + u * u / 24 - u * u * u / 720 + u * u * u * u / 40320);
        }
        if (w2 > 0) return std::exp(-0.5 * gamma * s) * std::cos(std::sqrt(w2) * x);
        const double a = std::sqrt(-w2);
        return 0.5 * (std::exp(a * x - 0.5 * gamma * s) + std::exp(-a * x - 0.5 * gamma * s));
    }

    // exp(-gamma*s/2) sin(wbar x)/wbar
    double damped_sinc(double x, double s) const {
        if (small(x)) {
            const double u = w2 * x * x;
            return std::exp(-0.5 * gamma * s) * x * (1 - u / 6 + u * u / 120 - u * u * u / 5040);
        }
        if (w2 > 0) {
            const double wb = std::sqrt(w2);
            return std::exp(-0.5 * gamma * s) * std::sin(wb * x) / wb;
        }
        const double a = std::sqrt(-w2);
        return 0.5 * (std::exp(a * x - 0.5 * gamma * s) - std::exp(-a * x - 0.5 * gamma * s)) / a;
    }

    // exp(-gamma*s/2) [cos(wbar d) - cos(wbar s)] / wbar^2, with |d| <= s
    double damped_cos_gap(double d, double s) const {
        if (small(s)) {
            const double d2 = d * d, s2 = s * s;
            const double p2 = s2 - d2;
            const double p4 = s2 * s2 - d2 * d2;
            const double p6 = s2 * s2 * s2 - d2 * d2 * d2;
            const double p8 = s2 * s2 * s2 * s2 - d2 * d2 * d2 * d2;
            const double series = p2 / 2 - w2 * p4 / 24 + w2 * w2 * p6 / 720 - w2 * w2 * w2 * p8 / 40320;
            return std::exp(-0.5 * gamma * s) * series;
        }
        return (damped_cos(d, s) - damped_cos(s, s)) / w2;
    }
};

}  // namespace

double matter_gret_time(const MediumParams& p, double dt) {
    if (dt <= 0.0) return 0.0;
    const Oscillator osc{p.resonance * p.resonance - 0.25 * p.damping * p.damping, p.damping};
    return osc.damped_sinc(dt, dt);
}

double matter_gH_time(const MediumParams& p, double t, double tp, double t_i) {
    if (t < t_i || tp < t_i) throw DomainError("matter Hadamard function: times must not precede the initial time");
    if (p.resonance == 0.0)
        throw DomainError("matter Hadamard function: zero resonance makes coth(beta w/2)/w singular");
    const double g = p.damping;
    const double wt = p.resonance;
    const Oscillator osc{wt * wt - 0.25 * g * g, g};
    const double s = t + tp - 2.0 * t_i;
    const double d = t - tp;
    // The bracket divided by wbar^2, regrouped so critical damping is regular:
    // (g^2/4)[C(d) - C(s)]/wbar^2 + C(d) + (g/2) sin(wbar s)/wbar.
    const double bracket = 0.25 * g * g * osc.damped_cos_gap(d, s) + osc.damped_cos(d, s) + 0.5 * g * osc.damped_sinc(s, s);
    return coth_half(p.beta(), wt) / wt * bracket;
}

cplx matter_gret_omega(const MediumParams& p, double omega) {
    const cplx denom = cplx(p.resonance * p.resonance - omega * omega, -p.damping * omega);
    if (denom == 0.0) {
        std::ostringstream msg;
        msg << "matter retarded function: undamped resonance hit at omega = " << omega << " eV";
        throw DomainError(msg.str());
    }
    return 1.0 / denom;
}

ReservoirKernels reservoir_kernels_omega(const MediumParams& p, double omega) {
    return {cplx(0.0, p.damping * omega), 2.0 * p.damping * omega_coth_half(p.beta(), omega)};
}

double medium_hadamard_steady(const MediumParams& p, double omega) {
    const cplx g = matter_gret_omega(p, omega);
    // At w = 0 use Im g = gamma w |g|^2 so that w coth(beta w/2) -> 2/beta.
    if (omega == 0.0) return 2.0 * p.damping * omega_coth_half(p.beta(), omega) * std::norm(g);
    return 2.0 * coth_half(p.beta(), omega) * g.imag();
}

double medium_hadamard_from_noise(const MediumParams& p, double omega) {
    const cplx g = matter_gret_omega(p, omega);
    const ReservoirKernels r = reservoir_kernels_omega(p, omega);
    return (std::conj(g) * r.hadamard * g).real();
}

}  // namespace noneqcp

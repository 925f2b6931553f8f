#pragma once

#include <complex>
#include <string>

namespace noneqcp {

using cplx = std::complex<double>;

enum class DielectricModel { lorentz, drude, plasma };

std::string to_string(DielectricModel m);
DielectricModel dielectric_model_from_string(const std::string& s);

// Coarse-grained dielectric: Ohmic-damped oscillators coupled to the field.
// Energies in eV, temperature in kelvin.
struct MediumParams {
    DielectricModel model = DielectricModel::drude;
    double plasma_freq = 8.9;  // Omega_P
    double damping = 0.0357;   // gamma
    double resonance = 0.0;    // omega-tilde
    double temperature = 295.0;

    static MediumParams lorentz(double plasma_freq, double damping, double resonance, double temperature);
    static MediumParams drude(double plasma_freq, double damping, double temperature);
    static MediumParams plasma(double plasma_freq, double temperature);
    static MediumParams gold(double temperature = 295.0) { return drude(8.9, 0.0357, temperature); }

    // Throws DomainError when an invariant is violated.
    void validate() const;
    double beta() const;
};

// 1 - Omega_P^2 / (w(w + i gamma) - wt^2).
cplx epsilon(const MediumParams& p, cplx omega);

// Retarded Green's function of the matter oscillator, exp(-g t/2) sin(wbar t)/wbar.
double matter_gret_time(const MediumParams& p, double dt);

// Transient Hadamard function of the matter oscillator prepared at t_i.
double matter_gH_time(const MediumParams& p, double t, double tp, double t_i);

// 1/(wt^2 - w^2 - i gamma w).
cplx matter_gret_omega(const MediumParams& p, double omega);

struct ReservoirKernels {
    cplx retarded;    // renormalized: real part absorbed into omega-tilde
    double hadamard;  // 2 gamma w coth(beta w/2)
};

ReservoirKernels reservoir_kernels_omega(const MediumParams& p, double omega);

// Late-time matter Hadamard function, 2 coth(beta w/2) Im g_ret(w).
double medium_hadamard_steady(const MediumParams& p, double omega);

// The same quantity assembled as g_ret^* G_H g_ret from the reservoir noise.
double medium_hadamard_from_noise(const MediumParams& p, double omega);

}  // namespace noneqcp

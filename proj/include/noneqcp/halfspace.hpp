#pragma once

#include <vector>

#include "noneqcp/medium.hpp"
#include "noneqcp/quadrature.hpp"

namespace noneqcp {

// Square root on the branch with Im >= 0 (Re >= 0 on the positive real axis).
cplx sqrt_upper(cplx z);

struct WaveDecomposition {
    double omega = 0;
    double k_par = 0;
    double q = 0;
    cplx k_z;  // vacuum side
    cplx K_z;  // medium side
    bool evanescent() const { return q > 1.0; }
};

WaveDecomposition wave_decompose(double omega, double k_par, cplx eps = 1.0);

enum class Incidence { right, left };

struct FresnelSet {
    cplx r_te, t_te, r_tm, t_tm;
    Incidence side = Incidence::right;
};

// Wave incident from the vacuum side. k_z and K_z are the vacuum and medium
// normal wave-vector components.
FresnelSet fresnel_right(cplx eps, cplx k_z, cplx K_z);
FresnelSet fresnel_right(const MediumParams& p, double omega, double k_par);

// Wave incident from inside the medium with normal component K_z; k_vac_z is
// the vacuum normal component it couples to.
FresnelSet fresnel_left(cplx eps, cplx K_z, cplx k_vac_z);
// Left-incident set for a pole mode s (frequency i s) labelled by real K_z > 0.
FresnelSet fresnel_left(const MediumParams& p, cplx s, double K_z, double k_par);

struct PoleSet {
    double k = 0;
    double k_par = 0;
    std::vector<cplx> poles;
    std::vector<cplx> residues;
    std::vector<cplx> k_z;       // sqrt(-s^2 - k_par^2), Im > 0
    bool static_root_removed = false;  // Drude/plasma: the quartic's s = 0 root cancels
};

// Coefficients (highest power first) of the dispersion quartic
// s^2 (s(s+g) + wt^2 + W^2) + k^2 (s(s+g) + wt^2).
std::vector<cplx> dispersion_quartic(const MediumParams& p, double k);

PoleSet dispersion_poles(const MediumParams& p, double k, double k_par = 0.0);

struct EddyMode {
    cplx s;
    cplx residue;
    cplx k_z;
};

EddyMode eddy_mode_approx(const MediumParams& p, double k, double q);

// [R_TE + R_TM (k^2 - k_z^2)/w^2] exp(2 i k_z z), right-incident coefficients.
cplx reflection_integrand(cplx eps, double omega, double k_par, double z);
cplx reflection_integrand(const MediumParams& p, double omega, double k_par, double z);
// The same for an evanescent wave labelled by u = sqrt(q^2 - 1) >= 0, which
// avoids forming w^2 - k^2 from two nearly equal squares at small u.
cplx reflection_integrand_evanescent(cplx eps, double omega, double u, double z);
// Analytic z-derivative of the above.
cplx reflection_integrand_dz(const MediumParams& p, double omega, double k_par, double z);

struct ImFresnel {
    double im_r_te;
    double im_r_tm;
};

ImFresnel im_fresnel_evanescent(cplx eps, double omega, double q);
ImFresnel im_fresnel_evanescent(const MediumParams& p, double omega, double q);

// Integrand pieces of the evanescent closed forms, as functions of q > 1:
// S(q) = sqrt(Re eps - q^2 + |eps - q^2|) and the TE + TM bracket with the
// (2q^2 - 1)(q^2 + |eps - q^2|) weighting.
double evanescent_root(cplx eps, double q);
double evanescent_bracket(cplx eps, double q);
// Propagating-sector bracket (TM weight q^2 + |eps - q^2|), 0 <= q < 1.
double propagating_bracket(cplx eps, double q);

struct GreensConvolution {
    cplx ew;
    cplx pw;
    double ew_error = 0;
    double pw_error = 0;
};

// Medium-volume convolution of two left-incident Green's functions with the
// z-derivative, split into evanescent and propagating sectors.
GreensConvolution greens_convolution(const MediumParams& p, double omega, double z, const QuadOptions& opt = {});

// Evanescent q-range cutoff 1 + 30/(2 z w).
double evanescent_q_max(double omega, double z);

// Reflected trace integral F(w) = int_0^inf dk k [R_TE + R_TM (k^2-k_z^2)/w^2] e^{2ik_z z}
// at real w > 0, evaluated on the contour k_z = w + i t where the integrand
// decays monotonically.
cplx reflected_trace(const MediumParams& p, double omega, double z, const QuadOptions& opt = {});

}  // namespace noneqcp

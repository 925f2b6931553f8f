#include "noneqcp/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "noneqcp/errors.hpp"

namespace noneqcp {

namespace {

constexpr cplx I{0.0, 1.0};

cplx horner(const std::vector<cplx>& c, cplx s) {
    cplx v = 0.0;
    for (const cplx& a : c) v = v * s + a;
    return v;
}

std::vector<cplx> derivative(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    const std::size_t n = c.size() - 1;
    for (std::size_t i = 0; i < n; ++i) d.push_back(c[i] * static_cast<double>(n - i));
    return d;
}

std::string describe(const std::vector<cplx>& c) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
    return os.str();
}

// Eigenvalues of the companion matrix of a monic polynomial, then Newton polish.
std::vector<cplx> companion_roots(const std::vector<cplx>& c, double k) {
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[n - i] / c[0];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "dispersion poles: eigenvalue solver failed at k = " << k << " eV for coefficients {" << describe(c)
            << "}";
        throw ConvergenceError(msg.str(), k, 0.0);
    }
    const std::vector<cplx> d = derivative(c);
    std::vector<cplx> roots;
    for (int i = 0; i < n; ++i) {
        cplx s = solver.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            const cplx dp = horner(d, s);
            if (dp == 0.0) break;
            const cplx step = horner(c, s) / dp;
            s -= step;
            if (std::abs(step) <= 4e-16 * std::abs(s)) break;
        }
        roots.push_back(s);
    }
    // Deterministic order: by imaginary part, then real part.
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const double scale = std::max(std::abs(roots[i]), std::abs(roots[j]));
            if (std::abs(roots[i] - roots[j]) <= 1e-8 * scale) {
                std::ostringstream msg;
                msg << "dispersion poles: repeated root near " << roots[i] << " at k = " << k << " eV for coefficients {"
                    << describe(c) << "}";
                throw ConvergenceError(msg.str(), k, 0.0);
            }
        }
    return roots;
}

}  // namespace

cplx sqrt_upper(cplx z) {
    cplx r = std::sqrt(z);
    if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
    return r;
}

WaveDecomposition wave_decompose(double omega, double k_par, cplx eps) {
    if (!(omega > 0.0) || !(k_par >= 0.0)) throw DomainError("wave_decompose: requires omega > 0 and k_par >= 0");
    WaveDecomposition w;
    w.omega = omega;
    w.k_par = k_par;
    w.q = k_par / omega;
    if (k_par <= omega)
        w.k_z = std::sqrt((omega - k_par) * (omega + k_par));
    else
        w.k_z = cplx(0.0, std::sqrt((k_par - omega) * (k_par + omega)));
    // same factored form as k_z, so a vacuum medium reproduces it bit for bit
    w.K_z = sqrt_upper((eps - 1.0) * (omega * omega) + (omega - k_par) * (omega + k_par));
    return w;
}

FresnelSet fresnel_right(cplx eps, cplx k_z, cplx K_z) {
    const cplx den_te = k_z + K_z;
    const cplx den_tm = eps * k_z + K_z;
    if (den_te == 0.0 || den_tm == 0.0) {
        std::ostringstream msg;
        msg << "fresnel_right: vanishing denominator (k_z = " << k_z << ", K_z = " << K_z << ", eps = " << eps << ")";
        throw DomainError(msg.str());
    }
    FresnelSet f;
    f.side = Incidence::right;
    f.r_te = (k_z - K_z) / den_te;
    f.t_te = 1.0 + f.r_te;
    f.r_tm = (eps * k_z - K_z) / den_tm;
    f.t_tm = 2.0 * std::sqrt(eps) * k_z / den_tm;
    return f;
}

namespace {

// Right-incident set with the numerators written as
//   k_z^2 - K_z^2 = (1 - eps) w^2,  eps^2 k_z^2 - K_z^2 = (eps - 1)(eps w^2 - (eps + 1) k^2),
// so nearly transparent media (eps -> 1, where k_z - K_z cancels) keep full
// relative accuracy in R and its imaginary part.
FresnelSet fresnel_right_stable(cplx eps, double omega, double k_par, cplx k_z, cplx K_z) {
    FresnelSet f = fresnel_right(eps, k_z, K_z);
    const cplx em1 = eps - 1.0;
    const double w2 = omega * omega, k2 = k_par * k_par;
    const cplx den_te = k_z + K_z, den_tm = eps * k_z + K_z;
    f.r_te = -em1 * w2 / (den_te * den_te);
    f.t_te = 1.0 + f.r_te;
    f.r_tm = em1 * (eps * w2 - (eps + 1.0) * k2) / (den_tm * den_tm);
    return f;
}

}  // namespace

FresnelSet fresnel_right(const MediumParams& p, double omega, double k_par) {
    const cplx eps = epsilon(p, omega);
    const WaveDecomposition w = wave_decompose(omega, k_par, eps);
    return fresnel_right_stable(eps, omega, k_par, w.k_z, w.K_z);
}

FresnelSet fresnel_left(cplx eps, cplx K_z, cplx k_vac_z) {
    const cplx den_te = K_z + k_vac_z;
    const cplx den_tm = K_z + eps * k_vac_z;
    if (den_te == 0.0 || den_tm == 0.0) throw DomainError("fresnel_left: vanishing denominator");
    FresnelSet f;
    f.side = Incidence::left;
    f.r_te = (K_z - k_vac_z) / den_te;
    f.t_te = 1.0 + f.r_te;
    f.r_tm = (K_z - eps * k_vac_z) / den_tm;
    f.t_tm = 2.0 * std::sqrt(eps) * K_z / den_tm;
    return f;
}

FresnelSet fresnel_left(const MediumParams& p, cplx s, double K_z, double k_par) {
    if (!(K_z > 0.0)) throw DomainError("fresnel_left: mode label K_z must be positive");
    const cplx eps = epsilon(p, I * s);
    const cplx k_lz = sqrt_upper(-s * s - k_par * k_par);
    if (!(k_lz.imag() > 0.0)) throw std::logic_error("fresnel_left: vacuum wave vector has Im k_z <= 0");
    return fresnel_left(eps, K_z, k_lz);
}

std::vector<cplx> dispersion_quartic(const MediumParams& p, double k) {
    const double g = p.damping, w2 = p.resonance * p.resonance, W2 = p.plasma_freq * p.plasma_freq, k2 = k * k;
    return {1.0, g, w2 + W2 + k2, k2 * g, k2 * w2};
}

PoleSet dispersion_poles(const MediumParams& p, double k, double k_par) {
    p.validate();
    if (!(p.damping > 0.0)) throw DomainError("dispersion_poles: requires damping > 0");
    if (!(k > 0.0)) throw DomainError("dispersion_poles: requires k > 0");
    const double g = p.damping, w2 = p.resonance * p.resonance, W2 = p.plasma_freq * p.plasma_freq;

    PoleSet out;
    out.k = k;
    out.k_par = k_par;
    std::vector<cplx> q = dispersion_quartic(p, k);
    // Numerator of (eps(is) s - i k)/(eps(is) s^2 + k^2) after clearing the
    // oscillator denominator s^2 + g s + wt^2.
    std::vector<cplx> num{1.0, g - I * k, w2 + W2 - I * k * g, -I * k * w2};
    if (w2 == 0.0) {
        // Both numerator and quartic carry a factor s: not a pole.
        q.pop_back();
        num.pop_back();
        out.static_root_removed = true;
    }
    out.poles = companion_roots(q, k);
    const std::vector<cplx> dq = derivative(q);
    for (const cplx& s : out.poles) {
        out.residues.push_back(horner(num, s) / horner(dq, s));
        out.k_z.push_back(sqrt_upper(-s * s - k_par * k_par));
    }
    return out;
}

EddyMode eddy_mode_approx(const MediumParams& p, double k, double q) {
    if (p.model != DielectricModel::drude) throw DomainError("eddy_mode_approx: requires the drude model");
    const double k2 = k * k, W2 = p.plasma_freq * p.plasma_freq;
    EddyMode e;
    e.s = -p.damping * k2 / (k2 + W2);
    e.residue = (W2 - k2) / (2.0 * (k2 + W2));
    e.k_z = I * k * sqrt_upper(1.0 - q * q);
    return e;
}

cplx reflection_integrand(cplx eps, double omega, double k_par, double z) {
    const WaveDecomposition w = wave_decompose(omega, k_par, eps);
    const FresnelSet f = fresnel_right_stable(eps, omega, k_par, w.k_z, w.K_z);
    const double tm_weight = (2.0 * k_par * k_par - omega * omega) / (omega * omega);
    return (f.r_te + f.r_tm * tm_weight) * std::exp(2.0 * I * w.k_z * z);
}

cplx reflection_integrand_evanescent(cplx eps, double omega, double u, double z) {
    const double w = std::abs(omega);
    const double k_par = w * std::sqrt(1.0 + u * u);
    const cplx k_z(0.0, w * u);
    const cplx K_z = w * sqrt_upper(eps - 1.0 - u * u);
    const FresnelSet f = fresnel_right_stable(eps, w, k_par, k_z, K_z);
    return (f.r_te + f.r_tm * (1.0 + 2.0 * u * u)) * std::exp(-2.0 * w * u * z);
}

cplx reflection_integrand(const MediumParams& p, double omega, double k_par, double z) {
    return reflection_integrand(epsilon(p, omega), omega, k_par, z);
}

cplx reflection_integrand_dz(const MediumParams& p, double omega, double k_par, double z) {
    const cplx eps = epsilon(p, omega);
    const WaveDecomposition w = wave_decompose(omega, k_par, eps);
    return 2.0 * I * w.k_z * reflection_integrand(eps, omega, k_par, z);
}

ImFresnel im_fresnel_evanescent(cplx eps, double omega, double q) {
    if (!(q > 1.0)) throw DomainError("im_fresnel_evanescent: requires q > 1");
    const double w = std::abs(omega);
    const double kappa = w * std::sqrt((q - 1.0) * (q + 1.0));
    const double k = q * w;
    const cplx K = sqrt_upper(eps * w * w - k * k);
    const cplx k_z(0.0, kappa);
    ImFresnel r;
    r.im_r_te = 2.0 * kappa * K.real() / std::norm(k_z + K);
    r.im_r_tm = 2.0 * kappa * K.real() * (k * k + std::norm(K)) / (w * w * std::norm(eps * k_z + K));
    return r;
}

ImFresnel im_fresnel_evanescent(const MediumParams& p, double omega, double q) {
    return im_fresnel_evanescent(epsilon(p, omega), omega, q);
}

double evanescent_root(cplx eps, double q) {
    const cplx d = eps - q * q;
    const double r = std::abs(d);
    // For Re d < 0 the sum Re d + |d| cancels; use Im(d)^2 / (|d| - Re d).
    if (d.real() >= 0.0) return std::sqrt(d.real() + r);
    if (r == 0.0) return 0.0;
    return std::abs(d.imag()) / std::sqrt(r - d.real());
}

double evanescent_bracket(cplx eps, double q) {
    const cplx a = cplx(0.0, std::sqrt((q - 1.0) * (q + 1.0)));  // sqrt(1 - q^2)
    const cplx b = sqrt_upper(eps - q * q);
    const double q2 = q * q;
    return 1.0 / std::norm(a + b) + (2.0 * q2 - 1.0) * (q2 + std::abs(eps - q2)) / std::norm(eps * a + b);
}

double propagating_bracket(cplx eps, double q) {
    const double a = std::sqrt((1.0 - q) * (1.0 + q));
    const cplx b = sqrt_upper(eps - q * q);
    const double q2 = q * q;
    return 1.0 / std::norm(a + b) + (q2 + std::abs(eps - q2)) / std::norm(eps * a + b);
}

double evanescent_q_max(double omega, double z) { return 1.0 + 30.0 / (2.0 * z * std::abs(omega)); }

GreensConvolution greens_convolution(const MediumParams& p, double omega, double z, const QuadOptions& opt) {
    if (!(z > 0.0)) throw DomainError("greens_convolution: requires z > 0");
    if (!(p.damping > 0.0)) throw DomainError("greens_convolution: requires damping > 0");
    const cplx eps = epsilon(p, omega);
    const double w = std::abs(omega);
    const double pref = std::numbers::sqrt2 / (4.0 * std::numbers::pi) / eps.imag();

    const double q_max = evanescent_q_max(omega, z);
    const double u_max = std::sqrt((q_max - 1.0) * (q_max + 1.0));
    // q dq = u du with u = sqrt(q^2 - 1).
    auto ew = [&](double u) {
        const double q = std::sqrt(1.0 + u * u);
        return u * u * evanescent_root(eps, q) * evanescent_bracket(eps, q) * std::exp(-2.0 * z * w * u);
    };
    // q = sin(theta).
    auto pw = [&](double th) {
        const double q = std::sin(th), c = std::cos(th);
        return q * c * c * evanescent_root(eps, q) * propagating_bracket(eps, q);
    };
    const auto r_ew = integrate(ew, 0.0, u_max, opt);
    const auto r_pw = integrate(pw, 0.0, 0.5 * std::numbers::pi, opt);

    GreensConvolution g;
    const double w4 = omega * omega * omega * w;
    g.ew = -pref * w4 * r_ew.value;
    g.pw = -I * pref * omega * omega * omega * omega * r_pw.value;
    g.ew_error = pref * std::abs(w4) * r_ew.error;
    g.pw_error = pref * omega * omega * omega * omega * r_pw.error;
    return g;
}

cplx reflected_trace(const MediumParams& p, double omega, double z, const QuadOptions& opt) {
    if (!(omega > 0.0) || !(z > 0.0)) throw DomainError("reflected_trace: requires omega > 0 and z > 0");
    const cplx eps = epsilon(p, omega);
    const double w2 = omega * omega;
    const cplx shift = w2 * (eps - 1.0);
    auto f = [&](double t) {
        const cplx kz(omega, t);
        const cplx K = sqrt_upper(kz * kz + shift);
        const cplx k2 = w2 - kz * kz;
        const cplx r_te = -shift / ((kz + K) * (kz + K));
        const cplx r_tm = (eps - 1.0) * (eps * w2 - (eps + 1.0) * k2) / ((eps * kz + K) * (eps * kz + K));
        const cplx m = r_te + r_tm * (w2 - 2.0 * kz * kz) / w2;
        // dk k = -k_z dk_z, dk_z = i dt
        return -I * kz * m * std::exp(2.0 * I * kz * z);
    };
    const double t_max = 40.0 / z;
    std::vector<double> pts{0.0};
    for (double b : {omega, omega * std::sqrt(std::abs(eps))})
        if (b < t_max) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.push_back(t_max);
    return integrate(f, pts, opt).value;
}

}  // namespace noneqcp

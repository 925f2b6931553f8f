#include "noneqcp/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "noneqcp/errors.hpp"
#include "noneqcp/halfspace.hpp"
#include "noneqcp/thermal.hpp"
#include "noneqcp/units.hpp"

namespace noneqcp {

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx v = 0.0;
    for (const cplx& a : c) v = v * x + a;
    return v;
}

cplx horner_derivative(const std::vector<cplx>& c, cplx x) {
    cplx v = 0.0;
    const std::size_t n = c.size() - 1;
    for (std::size_t i = 0; i < n; ++i) v = v * x + c[i] * double(n - i);
    return v;
}

// 20-point Gauss-Legendre rule on [-1, 1] from the Jacobi matrix.
struct GaussLegendre {
    static constexpr int n = 20;
    std::array<double, n> x{}, w{};
    GaussLegendre() {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            const double b = k / std::sqrt(4.0 * k * k - 1.0);
            J(k, k - 1) = J(k - 1, k) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
        for (int i = 0; i < n; ++i) {
            x[i] = es.eigenvalues()(i);
            const double v0 = es.eigenvectors()(0, i);
            w[i] = 2.0 * v0 * v0;
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre rule;
    return rule;
}

double composite(const std::function<double(double)>& f, double a, double b, long panels) {
    const GaussLegendre& r = gl();
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (long p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < GaussLegendre::n; ++i) s += r.w[i] * f(c + 0.5 * h * r.x[i]);
        sum += 0.5 * h * s;
    }
    return sum;
}

double baseline_pieces(const std::function<double(double)>& f, std::vector<double> pts, double tol) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += quadrature_baseline(f, pts[i], pts[i + 1], tol);
    return total;
}

}  // namespace

OracleReport make_report(std::string name, std::vector<double> primary, std::vector<double> oracle, double tol) {
    OracleReport r;
    r.name = std::move(name);
    r.tolerance = tol;
    double diff = 0.0;
    for (std::size_t i = 0; i < std::min(primary.size(), oracle.size()); ++i)
        diff = std::max(diff, std::abs(primary[i] - oracle[i]));
    const double scale = max_abs(oracle);
    r.rel_error = diff == 0.0 ? 0.0 : (scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity());
    if (primary.size() != oracle.size()) r.rel_error = std::numeric_limits<double>::infinity();
    r.primary = std::move(primary);
    r.oracle = std::move(oracle);
    r.pass = r.rel_error <= tol;
    return r;
}

std::vector<cplx> root_oracle(const std::vector<cplx>& coeffs) {
    if (coeffs.empty() || coeffs.front() == 0.0) throw DomainError("root_oracle: leading coefficient must be nonzero");
    const std::size_t n = coeffs.size() - 1;
    std::vector<cplx> c(coeffs.size());
    for (std::size_t i = 0; i <= n; ++i) c[i] = coeffs[i] / coeffs[0];
    if (n == 0) return {};

    double radius = 0.0;
    for (std::size_t k = 1; k <= n; ++k) radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / double(k)));
    radius = std::max(2.0 * radius, 1e-3);

    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius, 2.0 * pi * double(k) / double(n) + 0.4);

    bool done = false;
    for (int it = 0; it < 5000 && !done; ++it) {
        double step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= z[k] - z[j];
            const cplx dz = horner(c, z[k]) / den;
            z[k] -= dz;
            step = std::max(step, std::abs(dz) / (1.0 + std::abs(z[k])));
        }
        done = step < 1e-15;
    }

    for (cplx& r : z) {
        for (int it = 0; it < 3; ++it) {
            const cplx d = horner_derivative(c, r);
            if (d == 0.0) break;
            const cplx nr = r - horner(c, r) / d;
            if (!std::isfinite(nr.real()) || !std::isfinite(nr.imag())) break;
            r = nr;
        }
    }

    // Residual against the size of the terms it cancels (backward error).
    double worst = 0.0;
    for (const cplx& r : z) {
        double mag = 0.0, rp = 1.0;
        for (std::size_t i = 0; i <= n; ++i) {
            mag += std::abs(c[n - i]) * rp;
            rp *= std::abs(r);
        }
        worst = std::max(worst, std::abs(horner(c, r)) / mag);
    }
    if (!done && worst > 1e-12) throw ConvergenceError("root_oracle: Durand-Kerner did not converge", 0.0, worst);
    if (worst > 1e-12) throw ConvergenceError("root_oracle: residual above 1e-12 after polish", 0.0, worst);
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) { return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real(); });
    return z;
}

double quadrature_baseline(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double prev = composite(f, a, b, 1);
    for (long panels = 2; panels <= (1L << 16); panels *= 2) {
        const double cur = composite(f, a, b, panels);
        if (std::abs(cur - prev) <= tol * std::abs(cur)) return composite(f, a, b, 4 * panels);
        prev = cur;
    }
    throw ConvergenceError("quadrature_baseline: panel budget exhausted", prev, std::numeric_limits<double>::infinity());
}

double quadrature_baseline_semi_infinite(const std::function<double(double)>& f, double a, double length_scale,
                                         double tol) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double s = 1.0 - t;
        const double v = f(a + length_scale * t / s);
        return v == 0.0 ? 0.0 : v * length_scale / (s * s);
    };
    return quadrature_baseline(g, 0.0, 1.0, tol);
}

GreensIdentitySides greens_identity_sides(const MediumParams& p, double omega, double z, double tol) {
    const cplx eps = epsilon(p, omega);
    const double w2 = omega * omega;
    const double abs_eps = std::abs(eps);
    const cplx root_eps = std::sqrt(eps);
    const double pref = 2.0 * pi / (16.0 * pi * pi);

    // int_{-inf}^0 dz' e^{2 Im K z'}
    auto depth = [&](double imK) {
        return quadrature_baseline_semi_infinite([&](double x) { return std::exp(-2.0 * imK * x); }, 0.0,
                                                 0.5 / imK, 1e-12);
    };
    // per unit (k dk): transmitted volume integrand
    auto volume = [&](double k) {
        const cplx kz = sqrt_upper(w2 - k * k);
        const cplx K = sqrt_upper(eps * w2 - k * k);
        const cplx ts = 2.0 * K / (kz + K);
        const cplx tp = 2.0 * root_eps * K / (eps * kz + K);
        const double tm_weight = (k * k + std::norm(kz)) / w2 * (k * k + std::norm(K)) / (abs_eps * w2);
        const double bracket = std::norm(ts) + std::norm(tp) * tm_weight;
        return w2 * eps.imag() * bracket / std::norm(K) * std::exp(-2.0 * kz.imag() * z) * depth(K.imag());
    };
    auto r_pair = [&](double k) {
        const cplx kz = sqrt_upper(w2 - k * k);
        const cplx K = sqrt_upper(eps * w2 - k * k);
        return std::pair<cplx, cplx>{(kz - K) / (kz + K), (eps * kz - K) / (eps * kz + K)};
    };

    GreensIdentitySides out;
    // Propagating: k = w sin(th), k dk = w^2 sin cos dth, k dk / k_z = w sin dth.
    out.volume_pw = pref * quadrature_baseline(
                               [&](double th) {
                                   const double k = omega * std::sin(th);
                                   return w2 * std::sin(th) * std::cos(th) * volume(k);
                               },
                               0.0, 0.5 * pi, tol);
    out.trace_pw = pref * quadrature_baseline(
                              [&](double th) {
                                  const auto [rs, rp] = r_pair(omega * std::sin(th));
                                  return omega * std::sin(th) * (2.0 - std::norm(rs) - std::norm(rp));
                              },
                              0.0, 0.5 * pi, tol);

    // Evanescent: k = w sqrt(1 + u^2), k dk = w^2 u du, k dk / kappa = w du.
    std::vector<double> pts{0.0};
    const cplx usp2 = -1.0 / (eps + 1.0);
    if (usp2.real() > 0.0) {
        const double u_sp = std::sqrt(usp2.real());
        for (double f : {0.5, 0.9, 1.0, 1.1, 2.0}) pts.push_back(f * u_sp);
    }
    const double L = 1.0 / (2.0 * omega * z);
    pts.push_back(std::max(pts.back(), L));
    const double u_end = pts.back();
    auto ew_volume = [&](double u) { return w2 * u * volume(omega * std::sqrt(1.0 + u * u)); };
    auto ew_trace = [&](double u) {
        const double q2 = 1.0 + u * u;
        const auto [rs, rp] = r_pair(omega * std::sqrt(q2));
        return 2.0 * omega * (rs.imag() + (2.0 * q2 - 1.0) * rp.imag()) * std::exp(-2.0 * omega * u * z);
    };
    out.volume_ew = pref * (baseline_pieces(ew_volume, pts, tol) +
                            quadrature_baseline_semi_infinite(ew_volume, u_end, L, tol));
    out.trace_ew = pref * (baseline_pieces(ew_trace, pts, tol) +
                           quadrature_baseline_semi_infinite(ew_trace, u_end, L, tol));
    return out;
}

OracleReport gfid_verify(const MediumParams& p, double omega, double z, double tol) {
    if (!(p.damping > 0.0)) throw DomainError("gfid_verify: needs a lossy medium (damping > 0)");
    if (!(z > 0.0)) throw DomainError("gfid_verify: z must be positive");
    const GreensIdentitySides s = greens_identity_sides(p, omega, z);
    std::ostringstream name;
    name << "greens_identity(w=" << omega << " eV, z=" << z << " 1/eV)";
    return make_report(name.str(), {s.volume_ew + s.volume_pw}, {s.trace_ew + s.trace_pw}, tol);
}

OracleReport finite_diff_check(const std::string& name, const std::function<cplx(double)>& field,
                               const std::function<cplx(double)>& derivative, double x, double h0, double tol) {
    constexpr int rows = 12;
    std::array<std::array<cplx, rows>, rows> A{};
    cplx best = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    double h = h0;
    for (int i = 0; i < rows; ++i, h *= 0.5) {
        A[i][0] = (field(x + h) - field(x - h)) / (2.0 * h);
        double f4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            f4 *= 4.0;
            A[i][j] = A[i][j - 1] + (A[i][j - 1] - A[i - 1][j - 1]) / (f4 - 1.0);
        }
        if (i == 0) continue;
        const double err = std::abs(A[i][i] - A[i - 1][i - 1]);
        if (err < best_err) {
            best_err = err;
            best = A[i][i];
        } else if (best_err > 0.1 * tol * std::abs(best)) {
            throw ConvergenceError("finite_diff_check: step ladder reached its noise floor (" + name + ")",
                                   std::abs(best), best_err / std::max(std::abs(best), 1e-300));
        } else {
            break;
        }
        if (best_err <= 1e-3 * tol * std::abs(best)) break;
    }
    const cplx d = derivative(x);
    return make_report(name, {d.real(), d.imag()}, {best.real(), best.imag()}, tol);
}

std::vector<OracleReport> run_oracle_suite(const Scenario& s, const ForceOptions& o) {
    s.validate();
    std::vector<OracleReport> out;
    const MediumParams& m = s.medium;
    const double z = units::meters_to_inv_eV(s.z);

    {   // poles against Durand-Kerner
        const double k = 1.0;
        const PoleSet ps = dispersion_poles(m, k);
        const auto roots = root_oracle(dispersion_quartic(m, k));
        std::vector<double> prim, orc;
        for (const cplx& pole : ps.poles) {
            const auto near = *std::min_element(roots.begin(), roots.end(),
                                                [&](cplx a, cplx b) { return std::abs(a - pole) < std::abs(b - pole); });
            prim.insert(prim.end(), {pole.real(), pole.imag()});
            orc.insert(orc.end(), {near.real(), near.imag()});
        }
        out.push_back(make_report("dispersion_poles_vs_root_oracle(k=1 eV)", prim, orc, 1e-8));
        cplx sum = 0.0;
        for (const cplx& r : ps.residues) sum += r;
        out.push_back(make_report("residue_sum(k=1 eV)", {sum.real(), sum.imag()}, {1.0, 0.0}, 1e-10));
    }

    {   // steady medium Hadamard and Eckhardt identity
        std::vector<double> fdr_p, fdr_o, eck_p, eck_o;
        for (int i = 0; i < 20; ++i) {
            const double w = 0.01 * std::pow(1000.0, i / 19.0);
            fdr_p.push_back(medium_hadamard_steady(m, w));
            fdr_o.push_back(medium_hadamard_from_noise(m, w));
            const cplx g = matter_gret_omega(m, w);
            eck_p.push_back(std::norm(g) * m.damping * w);
            eck_o.push_back(g.imag());
        }
        out.push_back(make_report("medium_fdr_steady", fdr_p, fdr_o, 1e-10));
        out.push_back(make_report("eckhardt_identity", eck_p, eck_o, 1e-12));
    }

    {   // evanescent inner integral: adaptive engine vs composite baseline
        const double w = 1.0;
        const cplx eps = epsilon(m, w);
        auto f = [&](double u) {
            const double q = std::sqrt(1.0 + u * u);
            return u * u * evanescent_root(eps, q) * evanescent_bracket(eps, q) * std::exp(-2.0 * z * w * u);
        };
        const double u_max = 30.0 / (2.0 * z * w) * 2.0;
        QuadOptions qo;
        qo.rel_tol = 1e-11;
        const double adaptive = integrate(f, 0.0, u_max, qo).value;
        const double base = quadrature_baseline(f, 0.0, u_max, 1e-11);
        out.push_back(make_report("ew_integrand_baseline(w=1 eV)", {adaptive}, {base}, 1e-6));
    }

    if (m.damping > 0.0) out.push_back(gfid_verify(m, 0.5, z));

    {
        const double w = 1.0, k = 1.5;
        out.push_back(finite_diff_check(
            "reflection_integrand_dz(w=1 eV, k=1.5 eV)",
            [&](double zz) { return reflection_integrand(m, w, k, zz); },
            [&](double zz) { return reflection_integrand_dz(m, w, k, zz); }, z, 0.1 * z));
    }

    out.push_back(make_report("ew_closed_vs_reflection", {ew_force(s, s.field_temperature, o)},
                              {ew_force_from_reflection(s, s.field_temperature, o)}, 1e-6));

    {
        Scenario eq = s;
        eq.medium.temperature = eq.field_temperature;
        const ForceBreakdown b = steady_total_force(eq, o);
        out.push_back(make_report("steady_equals_equilibrium_at_equal_temperatures", {b.total},
                                  {equilibrium_force(eq, eq.field_temperature, o)}, 0.0));
    }

    if (m.model == DielectricModel::drude) {
        const DynamicForce f = dyn_eddy_force_integral(s, o);
        const DynamicClosedForm c = dyn_eddy_force_closed(s);
        out.push_back(make_report("dyn_closed_vs_integral", {c.value}, {f.value}, 0.1));
    }
    return out;
}

}  // namespace noneqcp

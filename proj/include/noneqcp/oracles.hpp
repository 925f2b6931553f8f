#pragma once

#include <functional>
#include <string>
#include <vector>

#include "noneqcp/force.hpp"
#include "noneqcp/medium.hpp"

namespace noneqcp {

struct OracleReport {
    std::string name;
    std::vector<double> primary;
    std::vector<double> oracle;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// max |p - o| / max |o| (0 when both vanish); pass <=> rel_error <= tol.
OracleReport make_report(std::string name, std::vector<double> primary, std::vector<double> oracle, double tol);

// Durand-Kerner iteration from deterministic starting points on a circle of
// the Fujiwara radius, then Newton polish. Coefficients highest power first.
std::vector<cplx> root_oracle(const std::vector<cplx>& coeffs);

// Composite Gauss-Legendre (Golub-Welsch nodes) with the panel count doubled
// until two successive sums agree to tol; the accepted sum uses 4x the panels
// of the first agreeing level.
double quadrature_baseline(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);
// [a, inf) through x = a + L t/(1 - t).
double quadrature_baseline_semi_infinite(const std::function<double(double)>& f, double a, double length_scale,
                                         double tol = 1e-10);

// Both sides of the medium-volume Green's function identity at (w, z),
// summed over evanescent and propagating sectors.
struct GreensIdentitySides {
    double volume_ew = 0, volume_pw = 0;  // transmitted-field volume integral
    double trace_ew = 0, trace_pw = 0;    // imaginary part of the reflected trace
};
GreensIdentitySides greens_identity_sides(const MediumParams& p, double omega, double z, double tol = 1e-8);
OracleReport gfid_verify(const MediumParams& p, double omega, double z, double tol = 1e-3);

// Richardson-extrapolated central differences of `field` at x against
// `derivative(x)`. Throws ConvergenceError when the ladder hits its noise floor
// before successive extrapolants agree.
OracleReport finite_diff_check(const std::string& name, const std::function<cplx(double)>& field,
                               const std::function<cplx(double)>& derivative, double x, double h0,
                               double tol = 1e-6);

// The field-level suite run by `noneqcp validate`.
std::vector<OracleReport> run_oracle_suite(const Scenario& s, const ForceOptions& o = {});

}  // namespace noneqcp

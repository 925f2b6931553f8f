#include "noneqcp/thermal.hpp"

#include <cmath>
#include <limits>

#include "noneqcp/units.hpp"

namespace noneqcp {

namespace {

constexpr double laurent_cut = 1e-4;

// Bose occupation 1/(e^x - 1) for x > 0.
double bose(double x) { return 1.0 / std::expm1(x); }

}  // namespace

double inverse_temperature(double kelvin) {
    if (kelvin <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / units::kelvin_to_eV(kelvin);
}

double coth_half(double beta, double omega) {
    if (std::isinf(beta)) return (omega > 0) - (omega < 0);
    const double x = beta * omega;
    if (std::abs(x) < laurent_cut) return 2.0 / x + x / 6.0;
    return 1.0 / std::tanh(0.5 * x);
}

double omega_coth_half(double beta, double omega) {
    if (std::isinf(beta)) return std::abs(omega);
    const double x = beta * omega;
    if (std::abs(x) < laurent_cut) return 2.0 / beta + omega * x / 6.0;
    return omega / std::tanh(0.5 * x);
}

double coth_half_difference(double beta1, double beta2, double omega) {
    if (beta1 == beta2 || omega == 0.0) return 0.0;
    const double s = omega > 0 ? 1.0 : -1.0;
    const double w = std::abs(omega);
    const double n1 = std::isinf(beta1) ? 0.0 : bose(beta1 * w);
    const double n2 = std::isinf(beta2) ? 0.0 : bose(beta2 * w);
    return s * 2.0 * (n1 - n2);
}

}  // namespace noneqcp

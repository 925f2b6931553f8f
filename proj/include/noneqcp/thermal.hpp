#pragma once

namespace noneqcp {

// Inverse temperature in 1/eV; +infinity at T = 0.
double inverse_temperature(double kelvin);

// coth(beta*omega/2). Uses the Laurent series 2/x + x/6 for |x| < 1e-4 and
// sign(omega) at zero temperature.
double coth_half(double beta, double omega);

// omega * coth(beta*omega/2), finite at omega = 0 (limit 2/beta).
double omega_coth_half(double beta, double omega);

// coth(b1*w/2) - coth(b2*w/2) written as 2[n(b1 w) - n(b2 w)] to avoid the
// cancellation between two numbers close to 1. Exactly zero when b1 == b2.
double coth_half_difference(double beta1, double beta2, double omega);

}  // namespace noneqcp

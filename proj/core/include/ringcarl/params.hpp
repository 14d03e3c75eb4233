#ifndef RINGCARL_PARAMS_HPP
#define RINGCARL_PARAMS_HPP

#include <complex>
#include <numbers>

#include "ringcarl/errors.hpp"

namespace ringcarl {

using Complex = std::complex<double>;

// Physical constants of one ring-cavity configuration, in dimensionless
// cavity units: hbar = k = 1, kappa is the time unit. Time in 1/kappa,
// length in 1/k, energy in hbar*kappa, momentum in hbar*k, mass in
// hbar*k^2/kappa, velocity in kappa/k. Every formula in this library
// assumes this convention.
struct SystemParams {
    int n_particles = 1;    // N
    double u0 = 0.0;        // light shift per photon [kappa]; U0 < 0 for red detuning
    double kappa = 1.0;     // cavity field amplitude decay rate
    double delta_c = 0.0;   // pump-cavity detuning [kappa]
    double eta = 0.0;       // pump amplitude into the + mode (eta+ = eta, eta- = 0)
    double kb_t = 1.0;      // temperature [hbar*kappa]
    double mass = 100.0;    // particle mass [hbar*k^2/kappa]
    double k = 1.0;         // mode wavenumber (the inverse length unit)
    double v = 0.0;         // cloud mean velocity [kappa/k]; enters via d± = delta_c ± k v

    double collective_shift() const { return n_particles * u0; } // N U0
    double lambda() const { return 2.0 * std::numbers::pi / k; }
    // Period of every observable quantity: intensity, potential, density.
    double grating_period() const { return std::numbers::pi / k; }

    // Throws InvalidParamsError on any violated invariant. kappa = 0 is
    // accepted (lossless-cavity conservation checks); kappa < 0 is not.
    void validate() const;
};

// Complex amplitudes of the two counter-propagating modes, in
// dimensionless photon-amplitude units.
struct FieldAmplitudes {
    Complex a_plus{0.0, 0.0};
    Complex a_minus{0.0, 0.0};
};

// Complex order parameter R- = <exp(2ikx)> of the particle distribution.
// |R| = 0 for a flat cloud, |R| -> 1 for a perfect lambda/2 lattice.
// R+ = conj(R-) by construction.
struct Bunching {
    Complex r_minus{0.0, 0.0};

    double abs() const { return std::abs(r_minus); }
    double arg() const { return std::arg(r_minus); }
    Complex r_plus() const { return std::conj(r_minus); }
};

// Validates |R| <= 1 (tolerance 1e-12) and finiteness.
Bunching make_bunching(Complex r_minus);

// Geometry of the optical potential
//   V(x) = U0 (|a+|^2 + |a-|^2) + sign(U0) * 2 * depth * cos(2kx + alpha) + linear_slope * x
// with depth = |U0 a+ a-*| and alpha = arg(a+ a-*). linear_slope is the
// -m g inertial term of the accelerated frame.
struct PotentialShape {
    double depth_coefficient = 0.0; // |U0| |a+ a-*|  [hbar*kappa]
    double alpha = 0.0;             // arg(a+ a-*), in [-pi, pi)
    double linear_slope = 0.0;      // -m g  [hbar*kappa*k]
};

} // namespace ringcarl

#endif

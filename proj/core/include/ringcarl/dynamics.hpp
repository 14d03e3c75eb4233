#ifndef RINGCARL_DYNAMICS_HPP
#define RINGCARL_DYNAMICS_HPP

#include <utility>

#include "ringcarl/params.hpp"

// Closed-form field solutions, optical potential geometry, dipole forces
// and the center-of-mass acceleration of a bunched cloud in a single-side
// pumped ring cavity. All functions are pure; safe for concurrent use.
namespace ringcarl::dynamics {

// Doppler-split detunings seen by a cloud moving at velocity v:
// (d+, d-) = (delta_c + k v, delta_c - k v).
std::pair<double, double> detunings(const SystemParams& p);

// Collective coupling denominator
//   D = (d+ - NU0 + ik)(d- - NU0 + ik) - N^2 U0^2 |R|^2.
// Throws SingularDenominatorError when |D| < 1e-14 * max(1, scale):
// such zeros are measure-zero parameter coincidences (exact collective
// resonance, only reachable at kappa = 0) and must fail loudly.
Complex field_denominator(const SystemParams& p, double r_abs);

// Steady-state amplitudes the modes relax to for a frozen bunching R:
//   a+ = i eta (d- - NU0 + ik) / D,   a- = i eta N U0 R / D.
// Substituting the result into mode_rhs gives zero.
FieldAmplitudes steady_fields(const SystemParams& p, const Bunching& r);

// The interference product a+ a-* in closed form,
//   a+ a-* = eta^2 N U0 (d- - NU0 + ik) conj(R) / |D|^2.
Complex field_product(const SystemParams& p, const Bunching& r);

// Phase shift phi between the density maxima and the intensity maxima of
// the self-generated grating, defined by
//   cos(phi) = (NU0 - d-)/s,  sin(phi) = -kappa/s,  s = sqrt((d- - NU0)^2 + kappa^2).
// Computed with atan2 to fix the branch; kappa > 0 implies phi in (-pi, 0).
// The spatial shift of the intensity maxima is phi/(2k).
double potential_shift_phi(const SystemParams& p);

// Center-of-mass acceleration of the bunched cloud, from photon momentum
// conservation: every photon leaving the backscattered mode has deposited
// 2 hbar k in the gas, so N m g = -4 kappa |a-|^2 hbar k. Closed form:
//   g = -4 k kappa eta^2 N U0^2 |R|^2 / (m |D|^2)  <= 0.
// g < 0 encodes the accelerated-frame convention (inertial potential
// -m g x); the physical mean force on the cloud points along the pump.
double frame_acceleration(const SystemParams& p, const Bunching& r);

// Slope of the bare optical potential at the density-peak position
// x0 = arg(R)/(2k):  d/dx V_opt(x0) = -4 k U0 Im[a+ a-* e^{2ikx0}].
// Using this value as the inertial term -m g x makes x0 a stationary
// point of the tilted potential exactly, which is the pinning
// construction the mean-field iteration relies on. Relates to the
// momentum-conservation acceleration by m*g_frame = slope * |R|.
double pinning_slope(const SystemParams& p, const Bunching& r);

// Optical potential in the accelerated frame, constant part retained:
//   V(x) = U0 (|a+|^2 + |a-|^2 + 2 Re[a+ a-* e^{2ikx}]) - m g x.
// The constant part shifts nothing physical and cancels inside Boltzmann
// weights, but keeping it makes the intensity relation exact.
double potential_at(double x, const FieldAmplitudes& f, const SystemParams& p, double g);

// Depth/phase/tilt summary of the same potential.
PotentialShape potential_shape(const FieldAmplitudes& f, const SystemParams& p, double g);

// Dipole force f(x) = -dV/dx (no inertial term):
//   f(x) = 4 k U0 Im[a+ a-* e^{2ikx}].
// Spatial mean over one grating period is zero; together with the mode
// equations this conserves total momentum Sum p + hbar k (|a+|^2 - |a-|^2)
// for an undriven lossless cavity.
double dipole_force(double x, const FieldAmplitudes& f, const SystemParams& p);

// Right-hand side of the mode equations for frozen bunching R:
//   da±/dt = [i(d± - NU0) - kappa] a± - i NU0 <e^{∓2ikx}> a∓ + eta±
// with <e^{-2ikx}> = conj(R) coupling into da+/dt, <e^{+2ikx}> = R into
// da-/dt, and eta+ = eta, eta- = 0.
std::pair<Complex, Complex> mode_rhs(const FieldAmplitudes& f, const Bunching& r,
                                     const SystemParams& p);

} // namespace ringcarl::dynamics

#endif

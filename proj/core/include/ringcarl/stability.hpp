#ifndef RINGCARL_STABILITY_HPP
#define RINGCARL_STABILITY_HPP

#include <optional>
#include <utility>

#include "ringcarl/params.hpp"

// Analytic self-organization thresholds from the linear stability of the
// flat cloud, and the optimal-backscatter detuning. Pure functions.
namespace ringcarl::stability {

// Gain of an infinitesimal lambda/2 density modulation over one
// field-equilibration / thermalization cycle:
//   G = N U0^2 eta^2 / (kB_T sqrt((d- - NU0)^2 + k^2) ((d+ - NU0)^2 + k^2)).
// The flat distribution is unstable (self-organizes) iff G > 1.
// Throws ZeroTemperatureError for kb_t <= 0.
double linear_gain(const SystemParams& p);

// Pump amplitude at which G = 1 for a cloud moving at velocity v:
//   eta_th = sqrt( kB_T sqrt((d- - NU0)^2 + k^2) ((d+ - NU0)^2 + k^2) / (N U0^2) ).
// Throws ZeroCouplingError at U0 = 0. kb_t = 0 gives 0 (a cold cloud
// orders at any pump).
double eta_threshold(const SystemParams& p);

// The v = 0 closed form, eta_th = sqrt( kB_T ((delta_c - NU0)^2 + k^2)^{3/2} / (N U0^2) ).
// Evaluates the at-rest formula regardless of p.v.
double eta_threshold_rest(const SystemParams& p);

// Global minimum of the at-rest threshold over delta_c, attained at
// delta_c = NU0:  eta_min = sqrt( kB_T kappa^3 / (N U0^2) ).
double eta_threshold_min(const SystemParams& p);

// Detunings maximizing the backscattered intensity |a-|^2 at fixed
// bunching magnitude r_abs:
//   delta_c = NU0 ± sqrt(N^2 U0^2 r_abs^2 - kappa^2),
// returned ascending when the radicand is >= 0 (sharp split resonances,
// kappa < N|U0| r_abs). Returns nullopt otherwise: a single broad
// maximum sits at delta_c = NU0 instead.
std::optional<std::pair<double, double>>
optimal_backscatter_detuning(const SystemParams& p, double r_abs);

} // namespace ringcarl::stability

#endif

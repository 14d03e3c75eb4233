#ifndef RINGCARL_MEANFIELD_HPP
#define RINGCARL_MEANFIELD_HPP

#include <cmath>
#include <string>
#include <vector>

#include "ringcarl/dynamics.hpp"
#include "ringcarl/params.hpp"

// Canonical (Boltzmann) density construction over a single potential well,
// bunching extraction, and the self-consistent mean-field fixed-point
// iteration with (delta_c, eta) contour sweeps.
namespace ringcarl::meanfield {

// Normalized particle density over one grating period [x0 - L/2, x0 + L/2]
// (L = lambda/2), sampled on a uniform closed grid of grid_points() nodes
// including both endpoints. Trapezoidal integral of rho equals 1; the
// closed grid keeps the quadrature second order even when the tilted
// (non-periodic) potential breaks periodicity of rho.
struct DensityProfile {
    double x_center = 0.0;
    double period = std::numbers::pi;
    std::vector<double> x_values;
    std::vector<double> rho_values;

    int grid_points() const { return static_cast<int>(x_values.size()); }
    double spacing() const { return period / (grid_points() - 1); }
    double uniform_density() const { return 1.0 / period; }
    double peak_density() const;
    // Trapezoidal integral of rho over the period (1 up to quadrature).
    double integral() const;
};

struct FixedPointResult {
    Bunching r_final;
    DensityProfile density;
    FieldAmplitudes fields;
    double g_final = 0.0;
    int iterations_used = 0;
    bool converged = false;
    double peak_density = 0.0;
    std::vector<double> history; // |R| after each iteration
    // True if any iteration hit the degenerate pinning point d- = NU0,
    // where the tilted potential has no local minimum and the untilted
    // optical potential was used instead.
    bool pinning_degenerate = false;
};

// rho(x) = exp(-V(x)/kB_T)/Z over one period centered at x_center, Z the
// trapezoidal integral. The potential is rescaled by its minimum before
// exponentiation to avoid overflow. Requires kb_t > 0 and grid >= 64.
//
// tilt is an optional linear slope added to the sampled potential,
// V(x) += tilt * (x - x_center); it throws NoLocalMinimumError when |tilt|
// exceeds the largest slope of the periodic part (monotonic potential, no
// well to populate).
template <class PotentialFn>
DensityProfile boltzmann_density_tilted(PotentialFn&& potential, double kb_t, int grid,
                                        double x_center, double period, double tilt,
                                        double max_periodic_slope);

template <class PotentialFn>
DensityProfile boltzmann_density(PotentialFn&& potential, double kb_t, int grid,
                                 double x_center = 0.0,
                                 double period = std::numbers::pi) {
    return boltzmann_density_tilted(std::forward<PotentialFn>(potential), kb_t, grid,
                                    x_center, period, 0.0, 0.0);
}

// R- = integral of rho(x) e^{2ikx} dx over one period (trapezoidal), with
// k = pi / period. |R| <= 1 holds exactly for any normalized profile.
Bunching bunching_from_density(const DensityProfile& density);

struct StepResult {
    Bunching r_out;
    FieldAmplitudes fields;
    double g = 0.0; // momentum-conservation frame acceleration
    DensityProfile density;
    bool pinning_degenerate = false;
};

struct IterationOptions {
    int grid = 1024;
    // Under-relaxation of the outer loop, |R_{n+1}| = (1-a)|R_n| + a|step(R_n)|.
    // The fixed points are those of the raw map; damping only suppresses the
    // period-2 limit cycles the saturated map develops near d- = NU0.
    // 1 recovers plain repetition of iterate_step.
    double relaxation = 0.5;
    // Update the cloud velocity by g * dt_iter after every iteration.
    // Off by default: the stationary-velocity iteration is the reference.
    bool velocity_update = false;
    double dt_iter = 1.0;
};

// One cycle of the self-consistent loop: steady fields for r_in, inertial
// tilt pinning the potential minimum at the density peak x0 = arg(r)/2k,
// canonical density in the tilted potential, bunching of that density.
// The returned bunching keeps the input phase (translation invariance);
// only its magnitude is produced by the cycle. R = 0 is an exact fixed
// point. g is the momentum-conservation acceleration of the cloud.
StepResult iterate_step(const SystemParams& p, const Bunching& r_in,
                        const IterationOptions& opt = {});

// Repeats iterate_step until | |R_n| - |R_{n-1}| | < tol or max_iters.
// Non-convergence is reported, not thrown.
FixedPointResult iterate_selfconsistent(const SystemParams& p, const Bunching& r0,
                                        int max_iters, double tol,
                                        const IterationOptions& opt = {});

struct ContourCell {
    double delta_c = 0.0;
    double eta = 0.0;
    double peak_density = 0.0;
    double abs_r = 0.0;
    double abs_a_minus_sq = 0.0;
    double g = 0.0;
    bool converged = false;
    std::string error_flag; // empty on success
};

// One fixed-point summary per (delta_c, eta) grid cell, delta_c outer,
// row-major. Cells are independent; jobs > 1 evaluates them in parallel
// with results bit-identical to sequential order. Per-cell errors become
// sentinel rows (NaN values, error_flag set) and the sweep continues.
std::vector<ContourCell> sweep_contour(const SystemParams& params_base,
                                       const std::vector<double>& delta_grid,
                                       const std::vector<double>& eta_grid,
                                       double r0, int iters, double tol = 1e-8,
                                       const IterationOptions& opt = {}, int jobs = 1);

// --- implementation ---

template <class PotentialFn>
DensityProfile boltzmann_density_tilted(PotentialFn&& potential, double kb_t, int grid,
                                        double x_center, double period, double tilt,
                                        double max_periodic_slope) {
    if (!(kb_t > 0.0)) throw ZeroTemperatureError("boltzmann_density requires kb_t > 0");
    if (grid < 64) throw InvalidParamsError("boltzmann_density requires grid >= 64");
    if (!(period > 0.0)) throw InvalidParamsError("period must be > 0");
    if (tilt != 0.0 && std::abs(tilt) > max_periodic_slope * (1.0 + 1e-9))
        throw NoLocalMinimumError("inertial tilt exceeds the maximum grating slope; "
                                  "the tilted potential is monotonic over the period");

    DensityProfile out;
    out.x_center = x_center;
    out.period = period;
    out.x_values.resize(grid);
    out.rho_values.resize(grid);

    const double h = period / (grid - 1);
    const double x_left = x_center - 0.5 * period;
    double v_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        const double x = x_left + j * h;
        out.x_values[j] = x;
        const double val = potential(x) + tilt * (x - x_center);
        if (!std::isfinite(val))
            throw InvalidParamsError("potential is not finite on the period");
        out.rho_values[j] = val;
        v_min = std::min(v_min, val);
    }
    double z = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double w = std::exp(-(out.rho_values[j] - v_min) / kb_t);
        out.rho_values[j] = w;
        z += (j == 0 || j == grid - 1) ? 0.5 * w : w;
    }
    z *= h;
    for (double& rho : out.rho_values) rho /= z;
    return out;
}

} // namespace ringcarl::meanfield

#endif

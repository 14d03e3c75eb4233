#ifndef RINGCARL_SIMULATE_HPP
#define RINGCARL_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ringcarl/params.hpp"

// Direct integration of N particle positions/momenta coupled to the two
// mode amplitudes. A single run is a sequential dependency chain; sweep
// cells are independent and may run in parallel.
namespace ringcarl::simulate {

// Full microscopic state. Positions are folded to one wavelength
// [0, lambda) -- every force and observable depends on x only through
// e^{±2ikx}, so the fold is exact. Momenta are unfolded, which keeps the
// center-of-mass drift of a decelerating beam observable.
struct EnsembleState {
    double t = 0.0;
    std::vector<double> x; // [1/k]
    std::vector<double> p; // [hbar k]
    FieldAmplitudes fields;

    int size() const { return static_cast<int>(x.size()); }
};

struct ObservableRecord {
    double t = 0.0;
    double kinetic_energy_per_particle = 0.0; // [hbar kappa]
    double bunching_abs = 0.0;
    double bunching_phase = 0.0;
    double com_momentum = 0.0; // mean momentum per particle [hbar k]
    double a_plus_sq = 0.0;
    double a_minus_sq = 0.0;
};

enum class FieldMode {
    dynamic,  // integrate da±/dt alongside the particles
    adiabatic // fields follow steady_fields(R(t)) instantaneously
};

struct SimConfig {
    double dt = 0.005;       // [1/kappa]
    double t_end = 60.0;     // [1/kappa]
    int record_every = 20;   // steps between records
    std::uint64_t seed = 1;
    FieldMode field_mode = FieldMode::dynamic;

    // dt must resolve both the cavity decay and the fastest detuning:
    // dt <= 0.01 * min(1/kappa, 1/max(|d± - NU0|, 1)).
    double dt_bound(const SystemParams& p) const;
    void validate(const SystemParams& p) const;
};

// Time derivative of the full state: dx = p/m, dp the dipole force, da±
// the mode equations driven by the instantaneous ensemble bunching.
struct StateDerivative {
    std::vector<double> dx;
    std::vector<double> dp;
    Complex da_plus{0.0, 0.0};
    Complex da_minus{0.0, 0.0};
};

// Positions uniform on [0, lambda), momenta Gaussian with mean p0 and
// variance m kB_T, fields zero. Deterministic for a fixed seed.
EnsembleState init_ensemble(const SystemParams& p, double p0, std::uint64_t seed);

// Discrete bunching (1/N) sum_j e^{2ikx_j}.
Bunching ensemble_bunching(const EnsembleState& state, const SystemParams& p);

StateDerivative derivative(const EnsembleState& state, const SystemParams& p);

// One classical RK4 step over the coupled system (2N reals + 2 complex).
// In adiabatic mode the fields are not integrated: each stage evaluates
// steady_fields at that stage's bunching and the state's fields are set
// to steady_fields(R) after the step. Throws NonfiniteStateError if the
// step produces NaN/inf.
EnsembleState step_rk4(const EnsembleState& state, const SystemParams& p, double dt,
                       FieldMode mode = FieldMode::dynamic);

// Integrates from t = 0 to cfg.t_end, recording at t = 0, every
// record_every-th step, and at t_end. Deterministic for fixed seed.
std::vector<ObservableRecord> run(const SystemParams& p, const SimConfig& cfg, double p0);

struct SimSweepCell {
    double delta_c = 0.0;
    double eta = 0.0;
    double energy_change = 0.0; // ekin(t_end) - ekin(0), per particle
    double mean_abs_r = 0.0;    // time average of |R| over the records
    double final_com_p = 0.0;
    std::string error_flag;     // empty on success
};

// One run per (delta_c, eta) cell with per-cell seeds derived from
// (cfg.seed, row, column); rows row-major, bit-identical for any jobs.
std::vector<SimSweepCell> sweep_sim(const SystemParams& params_base,
                                    const std::vector<double>& delta_grid,
                                    const std::vector<double>& eta_grid,
                                    const SimConfig& cfg, double p0, int jobs = 1);

ObservableRecord observe(const EnsembleState& state, const SystemParams& p);

} // namespace ringcarl::simulate

#endif

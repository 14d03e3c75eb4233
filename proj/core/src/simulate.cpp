#include "ringcarl/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "ringcarl/dynamics.hpp"
#include "ringcarl/rng.hpp"

namespace ringcarl::simulate {

double SimConfig::dt_bound(const SystemParams& p) const {
    const auto [dp, dm] = dynamics::detunings(p);
    const double coll = p.collective_shift();
    const double detuning_scale =
        std::max({std::abs(dp - coll), std::abs(dm - coll), 1.0});
    double bound = 0.01 / detuning_scale;
    if (p.kappa > 0.0) bound = std::min(bound, 0.01 / p.kappa);
    return bound;
}

void SimConfig::validate(const SystemParams& p) const {
    if (!(dt > 0.0)) throw InvalidParamsError("dt must be > 0");
    if (!(t_end >= dt)) throw InvalidParamsError("t_end must be >= dt");
    if (record_every < 1) throw InvalidParamsError("record_every must be >= 1");
    const double bound = dt_bound(p);
    if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "dt = " << dt << " exceeds the stability bound " << bound
           << " = 0.01 * min(1/kappa, 1/max(|d± - NU0|, 1))";
        throw InvalidParamsError(os.str());
    }
}

EnsembleState init_ensemble(const SystemParams& p, double p0, std::uint64_t seed) {
    p.validate();
    rng::SplitMix64 gen(seed);
    EnsembleState state;
    state.x.resize(p.n_particles);
    state.p.resize(p.n_particles);
    const double lambda = p.lambda();
    for (double& x : state.x) x = lambda * gen.uniform();
    const double sigma = std::sqrt(p.mass * p.kb_t);
    for (double& mom : state.p) mom = p0 + sigma * gen.normal();
    return state;
}

Bunching ensemble_bunching(const EnsembleState& state, const SystemParams& p) {
    double sum_c = 0.0;
    double sum_s = 0.0;
    for (double x : state.x) {
        sum_c += std::cos(2.0 * p.k * x);
        sum_s += std::sin(2.0 * p.k * x);
    }
    const double n = state.size();
    return make_bunching(Complex(sum_c / n, sum_s / n));
}

namespace {

struct Stage {
    std::vector<double> x, p;  // stage state
    std::vector<double> c, s;  // cos/sin(2kx) per particle
    std::vector<double> dx[4], dp[4];
    Complex da_p[4], da_m[4];

    void resize(int n) {
        x.resize(n);
        p.resize(n);
        c.resize(n);
        s.resize(n);
        for (int i = 0; i < 4; ++i) {
            dx[i].resize(n);
            dp[i].resize(n);
        }
    }
};

// Derivative of (x, p, a+, a-) at one RK4 stage. In adiabatic mode the
// fields passed in are ignored: the stage uses steady_fields(R) and
// reports zero field derivatives.
void stage_derivative(const std::vector<double>& x, const std::vector<double>& p_mom,
                      FieldAmplitudes fields, const SystemParams& p, FieldMode mode,
                      std::vector<double>& c, std::vector<double>& s,
                      std::vector<double>& dx, std::vector<double>& dp, Complex& da_p,
                      Complex& da_m) {
    const int n = static_cast<int>(x.size());
    double sum_c = 0.0;
    double sum_s = 0.0;
    for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * p.k * x[j];
        c[j] = std::cos(theta);
        s[j] = std::sin(theta);
        sum_c += c[j];
        sum_s += s[j];
    }
    // mean of unit phasors, |R| <= 1 by construction
    if (!std::isfinite(sum_c) || !std::isfinite(sum_s))
        throw NonfiniteStateError("nonfinite positions inside an integration stage");
    const Bunching r{Complex(sum_c / n, sum_s / n)};
    if (mode == FieldMode::adiabatic) fields = dynamics::steady_fields(p, r);

    // f_j = 4 k U0 Im[a+ a-* e^{2ikx_j}]
    const Complex w = 4.0 * p.k * p.u0 * fields.a_plus * std::conj(fields.a_minus);
    const double inv_m = 1.0 / p.mass;
    for (int j = 0; j < n; ++j) {
        dx[j] = p_mom[j] * inv_m;
        dp[j] = w.real() * s[j] + w.imag() * c[j];
    }
    if (mode == FieldMode::dynamic) {
        const auto [rp, rm] = dynamics::mode_rhs(fields, r, p);
        da_p = rp;
        da_m = rm;
    } else {
        da_p = da_m = Complex(0.0, 0.0);
    }
}

void check_size(const EnsembleState& state, const SystemParams& p) {
    if (state.size() != p.n_particles ||
        state.p.size() != state.x.size())
        throw InvalidParamsError("ensemble size does not match n_particles");
}

void check_finite(const EnsembleState& state) {
    for (int j = 0; j < state.size(); ++j) {
        if (!std::isfinite(state.x[j]) || !std::isfinite(state.p[j])) {
            std::ostringstream os;
            os << "nonfinite particle state at t = " << state.t << ", index " << j
               << " (x = " << state.x[j] << ", p = " << state.p[j] << ")";
            throw NonfiniteStateError(os.str());
        }
    }
    if (!std::isfinite(std::abs(state.fields.a_plus)) ||
        !std::isfinite(std::abs(state.fields.a_minus))) {
        std::ostringstream os;
        os << "nonfinite field amplitudes at t = " << state.t;
        throw NonfiniteStateError(os.str());
    }
}

EnsembleState step_rk4_ws(const EnsembleState& state, const SystemParams& p, double dt,
                          FieldMode mode, Stage& ws) {
    check_size(state, p);
    check_finite(state);
    const int n = state.size();
    static constexpr double stage_frac[4] = {0.0, 0.5, 0.5, 1.0};

    for (int stage = 0; stage < 4; ++stage) {
        const std::vector<double>* xs = &state.x;
        const std::vector<double>* ps = &state.p;
        FieldAmplitudes fs = state.fields;
        if (stage > 0) {
            const double a = stage_frac[stage] * dt;
            for (int j = 0; j < n; ++j) {
                ws.x[j] = state.x[j] + a * ws.dx[stage - 1][j];
                ws.p[j] = state.p[j] + a * ws.dp[stage - 1][j];
            }
            fs.a_plus += a * ws.da_p[stage - 1];
            fs.a_minus += a * ws.da_m[stage - 1];
            xs = &ws.x;
            ps = &ws.p;
        }
        stage_derivative(*xs, *ps, fs, p, mode, ws.c, ws.s, ws.dx[stage], ws.dp[stage],
                         ws.da_p[stage], ws.da_m[stage]);
    }

    EnsembleState out;
    out.t = state.t + dt;
    out.x.resize(n);
    out.p.resize(n);
    const double w6 = dt / 6.0;
    const double lambda = p.lambda();
    for (int j = 0; j < n; ++j) {
        double x = state.x[j] + w6 * (ws.dx[0][j] + 2.0 * ws.dx[1][j] +
                                      2.0 * ws.dx[2][j] + ws.dx[3][j]);
        x -= lambda * std::floor(x / lambda);
        out.x[j] = x;
        out.p[j] = state.p[j] + w6 * (ws.dp[0][j] + 2.0 * ws.dp[1][j] +
                                      2.0 * ws.dp[2][j] + ws.dp[3][j]);
    }
    if (mode == FieldMode::dynamic) {
        out.fields.a_plus = state.fields.a_plus +
                            w6 * (ws.da_p[0] + 2.0 * ws.da_p[1] + 2.0 * ws.da_p[2] +
                                  ws.da_p[3]);
        out.fields.a_minus = state.fields.a_minus +
                             w6 * (ws.da_m[0] + 2.0 * ws.da_m[1] + 2.0 * ws.da_m[2] +
                                   ws.da_m[3]);
    } else {
        out.fields = dynamics::steady_fields(p, ensemble_bunching(out, p));
    }
    check_finite(out);
    return out;
}

} // namespace

StateDerivative derivative(const EnsembleState& state, const SystemParams& p) {
    check_size(state, p);
    const int n = state.size();
    StateDerivative d;
    d.dx.resize(n);
    d.dp.resize(n);
    std::vector<double> c(n), s(n);
    stage_derivative(state.x, state.p, state.fields, p, FieldMode::dynamic, c, s, d.dx,
                     d.dp, d.da_plus, d.da_minus);
    return d;
}

EnsembleState step_rk4(const EnsembleState& state, const SystemParams& p, double dt,
                       FieldMode mode) {
    Stage ws;
    ws.resize(state.size());
    return step_rk4_ws(state, p, dt, mode, ws);
}

ObservableRecord observe(const EnsembleState& state, const SystemParams& p) {
    ObservableRecord rec;
    rec.t = state.t;
    double ekin = 0.0;
    double psum = 0.0;
    for (double mom : state.p) {
        ekin += mom * mom;
        psum += mom;
    }
    const double n = state.size();
    rec.kinetic_energy_per_particle = ekin / (2.0 * p.mass * n);
    rec.com_momentum = psum / n;
    const Bunching r = ensemble_bunching(state, p);
    rec.bunching_abs = r.abs();
    rec.bunching_phase = r.arg();
    rec.a_plus_sq = std::norm(state.fields.a_plus);
    rec.a_minus_sq = std::norm(state.fields.a_minus);
    return rec;
}

std::vector<ObservableRecord> run(const SystemParams& p, const SimConfig& cfg, double p0) {
    p.validate();
    cfg.validate(p);

    EnsembleState state = init_ensemble(p, p0, cfg.seed);
    Stage ws;
    ws.resize(state.size());

    std::vector<ObservableRecord> records;
    records.push_back(observe(state, p));

    const long n_steps = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
    const double remainder = cfg.t_end - n_steps * cfg.dt;
    for (long i = 1; i <= n_steps; ++i) {
        state = step_rk4_ws(state, p, cfg.dt, cfg.field_mode, ws);
        state.t = i * cfg.dt;
        if (i % cfg.record_every == 0) records.push_back(observe(state, p));
    }
    if (remainder > 1e-12) {
        state = step_rk4_ws(state, p, remainder, cfg.field_mode, ws);
        state.t = cfg.t_end;
    }
    if (records.back().t != cfg.t_end) {
        state.t = cfg.t_end;
        records.push_back(observe(state, p));
    }
    return records;
}

std::vector<SimSweepCell> sweep_sim(const SystemParams& params_base,
                                    const std::vector<double>& delta_grid,
                                    const std::vector<double>& eta_grid,
                                    const SimConfig& cfg, double p0, int jobs) {
    if (delta_grid.empty() || eta_grid.empty())
        throw InvalidParamsError("sweep grids must be nonempty");

    const std::size_t n_eta = eta_grid.size();
    std::vector<SimSweepCell> cells(delta_grid.size() * n_eta);

    auto eval_cell = [&](std::size_t idx) {
        const std::size_t row = idx / n_eta;
        const std::size_t col = idx % n_eta;
        SimSweepCell& cell = cells[idx];
        cell.delta_c = delta_grid[row];
        cell.eta = eta_grid[col];
        SystemParams p = params_base;
        p.delta_c = cell.delta_c;
        p.eta = cell.eta;
        SimConfig c = cfg;
        c.seed = rng::cell_seed(cfg.seed, row, col);
        try {
            p.validate();
            const auto records = run(p, c, p0);
            cell.energy_change = records.back().kinetic_energy_per_particle -
                                 records.front().kinetic_energy_per_particle;
            double mean_r = 0.0;
            for (const auto& rec : records) mean_r += rec.bunching_abs;
            cell.mean_abs_r = mean_r / records.size();
            cell.final_com_p = records.back().com_momentum;
        } catch (const Error& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            cell.energy_change = cell.mean_abs_r = cell.final_com_p = nan;
            cell.error_flag = error_tag(e);
        }
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) eval_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min<std::size_t>(jobs, cells.size());
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    eval_cell(i);
            });
        for (auto& th : pool) th.join();
    }
    return cells;
}

} // namespace ringcarl::simulate

#include "ringcarl/meanfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ringcarl::meanfield {

double DensityProfile::peak_density() const {
    return *std::max_element(rho_values.begin(), rho_values.end());
}

double DensityProfile::integral() const {
    const int m = grid_points();
    double s = 0.0;
    for (int j = 0; j < m; ++j)
        s += (j == 0 || j == m - 1) ? 0.5 * rho_values[j] : rho_values[j];
    return s * spacing();
}

Bunching bunching_from_density(const DensityProfile& density) {
    const int m = density.grid_points();
    if (m < 2) throw InvalidParamsError("density profile needs at least 2 nodes");
    const double k = std::numbers::pi / density.period;
    const double h = density.spacing();
    Complex acc{0.0, 0.0};
    for (int j = 0; j < m; ++j) {
        const double w = (j == 0 || j == m - 1) ? 0.5 : 1.0;
        acc += w * density.rho_values[j] * std::polar(1.0, 2.0 * k * density.x_values[j]);
    }
    return make_bunching(acc * h);
}

StepResult iterate_step(const SystemParams& p, const Bunching& r_in,
                        const IterationOptions& opt) {
    const Bunching r = make_bunching(r_in.r_minus);
    const double period = p.grating_period();

    StepResult res;
    res.fields = dynamics::steady_fields(p, r);
    const Complex prod = res.fields.a_plus * std::conj(res.fields.a_minus);

    // No grating: the potential is flat and R = 0 is an exact fixed point.
    if (r.abs() == 0.0 || std::abs(prod) == 0.0) {
        res.r_out = Bunching{};
        res.g = 0.0;
        res.density = boltzmann_density([](double) { return 0.0; }, p.kb_t, opt.grid,
                                        0.0, period);
        return res;
    }

    const Complex phase = r.r_minus / r.abs(); // e^{2ikx0}
    const double x0 = std::arg(phase) / (2.0 * p.k);
    res.g = dynamics::frame_acceleration(p, r);

    // Inertial tilt -m g x chosen to pin the density peak x0 onto a
    // stationary point of the tilted potential, for any |R|. At d- = NU0
    // the pinned point degenerates into an inflection (the tilt equals
    // the maximum grating slope and the potential loses its local
    // minima); the construction still yields a density, piled against
    // the well boundary, and the step is flagged.
    const double slope = dynamics::pinning_slope(p, r);
    const Complex pp = prod * phase;
    const double max_slope = 4.0 * std::abs(p.k * p.u0) * std::abs(prod);
    const double tilt = -slope;
    res.pinning_degenerate = std::abs(std::real(pp)) <= 1e-12 * std::abs(pp);

    const FieldAmplitudes fields = res.fields;
    res.density = boltzmann_density_tilted(
        [&](double x) { return dynamics::potential_at(x, fields, p, 0.0); }, p.kb_t,
        opt.grid, x0, period, tilt, max_slope);

    // The cycle produces the modulation depth; the phase is a gauge choice
    // kept equal to the input (translation invariance of the problem).
    const Bunching raw = bunching_from_density(res.density);
    res.r_out = make_bunching(raw.abs() * phase);
    return res;
}

FixedPointResult iterate_selfconsistent(const SystemParams& p, const Bunching& r0,
                                        int max_iters, double tol,
                                        const IterationOptions& opt) {
    if (max_iters < 1) throw InvalidParamsError("max_iters must be >= 1");
    if (!(tol > 0.0)) throw InvalidParamsError("tol must be > 0");
    if (!(opt.relaxation > 0.0 && opt.relaxation <= 1.0))
        throw InvalidParamsError("relaxation must lie in (0, 1]");

    SystemParams params = p;
    Bunching r = make_bunching(r0.r_minus);
    double prev_abs = r.abs();

    FixedPointResult res;
    res.history.reserve(max_iters);
    for (int it = 0; it < max_iters; ++it) {
        StepResult step = iterate_step(params, r, opt);
        // The flat state is an exact fixed point: jump there instead of
        // mixing toward it geometrically.
        const double mixed =
            step.r_out.abs() == 0.0
                ? 0.0
                : (1.0 - opt.relaxation) * r.abs() + opt.relaxation * step.r_out.abs();
        const Complex phase = r.abs() > 0.0 ? r.r_minus / r.abs() : Complex(1.0, 0.0);
        r = make_bunching(mixed * phase);
        res.history.push_back(r.abs());
        res.iterations_used = it + 1;
        res.pinning_degenerate = res.pinning_degenerate || step.pinning_degenerate;
        res.fields = step.fields;
        res.g_final = step.g;
        res.density = std::move(step.density);
        if (opt.velocity_update) params.v += step.g * opt.dt_iter;
        if (std::abs(r.abs() - prev_abs) < tol) {
            res.converged = true;
            break;
        }
        prev_abs = r.abs();
    }
    res.r_final = r;
    res.peak_density = res.density.peak_density();
    return res;
}

namespace {

void require_monotone(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw InvalidParamsError(std::string(name) + " grid is empty");
    const bool asc = std::is_sorted(grid.begin(), grid.end());
    const bool desc = std::is_sorted(grid.rbegin(), grid.rend());
    if (!asc && !desc)
        throw InvalidParamsError(std::string(name) + " grid must be monotone");
}

} // namespace

std::vector<ContourCell> sweep_contour(const SystemParams& params_base,
                                       const std::vector<double>& delta_grid,
                                       const std::vector<double>& eta_grid,
                                       double r0, int iters, double tol,
                                       const IterationOptions& opt, int jobs) {
    require_monotone(delta_grid, "delta_c");
    require_monotone(eta_grid, "eta");
    if (!(r0 >= 0.0 && r0 <= 1.0)) throw InvalidParamsError("r0 must lie in [0, 1]");

    const std::size_t n_eta = eta_grid.size();
    std::vector<ContourCell> cells(delta_grid.size() * n_eta);

    auto eval_cell = [&](std::size_t idx) {
        const double delta_c = delta_grid[idx / n_eta];
        const double eta = eta_grid[idx % n_eta];
        ContourCell& cell = cells[idx];
        cell.delta_c = delta_c;
        cell.eta = eta;
        SystemParams p = params_base;
        p.delta_c = delta_c;
        p.eta = eta;
        try {
            p.validate();
            const FixedPointResult r = iterate_selfconsistent(p, Bunching{Complex(r0, 0.0)},
                                                              iters, tol, opt);
            cell.peak_density = r.peak_density;
            cell.abs_r = r.r_final.abs();
            cell.abs_a_minus_sq = std::norm(r.fields.a_minus);
            cell.g = r.g_final;
            cell.converged = r.converged;
        } catch (const Error& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            cell.peak_density = cell.abs_r = cell.abs_a_minus_sq = cell.g = nan;
            cell.converged = false;
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

} // namespace ringcarl::meanfield

// Acceptance suite: end-to-end checks of the analytic formulas, the
// mean-field iteration and the N-particle simulator against each other.
// Runs every criterion (or a single one given as argv[1]) and prints one
// PASS/FAIL line per criterion. Exit code = number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ringcarl/dynamics.hpp"
#include "ringcarl/meanfield.hpp"
#include "ringcarl/rng.hpp"
#include "ringcarl/runner.hpp"
#include "ringcarl/simulate.hpp"
#include "ringcarl/stability.hpp"
#include "test_support.hpp"

using namespace ringcarl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome pass(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

int hardware_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? static_cast<int>(n) : 2;
}

// ---------------------------------------------------------------------
// 1. Fixed–point closure of the steady fields.
Outcome criterion_fixed_point() {
    test::ParamGen gen(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemParams p = gen.params(i % 2 == 1);
        const Bunching r = gen.bunching();
        const auto [dp, dm] = dynamics::mode_rhs(dynamics::steady_fields(p, r), r, p);
        const double residual = std::max(std::abs(dp), std::abs(dm)) / (1.0 + p.eta);
        worst = std::max(worst, residual);
        if (residual >= 1e-10)
            return fail(fmt("residual %.3e at sample %d exceeds 1e-10", residual, i));
    }
    return pass(fmt("worst normalized mode residual %.3e < 1e-10 over 1000 samples", worst));
}

// 2. Dual-acceleration identity.
Outcome criterion_dual_acceleration() {
    test::ParamGen gen(102);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemParams p = gen.params(i % 2 == 1);
        const Bunching r = gen.bunching();
        const double g_closed = dynamics::frame_acceleration(p, r);
        const auto f = dynamics::steady_fields(p, r);
        const double g_field =
            -4.0 * p.kappa * std::norm(f.a_minus) * p.k / (p.n_particles * p.mass);
        const double scale = std::max({std::abs(g_closed), std::abs(g_field), 1e-300});
        const double rel = std::abs(g_closed - g_field) / scale;
        worst = std::max(worst, rel);
        if (rel >= 1e-12)
            return fail(fmt("acceleration routes differ by %.3e relative", rel));
    }
    return pass(fmt("worst relative difference %.3e < 1e-12 over 1000 samples", worst));
}

// 3. Threshold–gain closure and the minimum property.
Outcome criterion_threshold_gain() {
    test::ParamGen gen(103);
    for (int i = 0; i < 500; ++i) {
        SystemParams p = gen.params(i % 2 == 1);
        p.eta = stability::eta_threshold(p);
        const double gain = stability::linear_gain(p);
        if (std::abs(gain - 1.0) >= 1e-12)
            return fail(fmt("linear_gain(eta_threshold) = 1 %+.3e", gain - 1.0));
    }

    SystemParams p;
    p.n_particles = 200;
    p.u0 = -1.0 / 115.0;
    p.kb_t = 1.0;
    const double coll = p.collective_shift();
    const double floor = stability::eta_threshold_min(p);
    for (int i = 0; i <= 10000; ++i) {
        p.delta_c = coll - 5.0 + i * 1e-3;
        const double eta = stability::eta_threshold_rest(p);
        if (eta < floor * (1.0 - 1e-12))
            return fail(fmt("rest threshold %.12f below minimum %.12f", eta, floor));
        if (std::abs(p.delta_c - coll) > 2e-3 && eta <= floor)
            return fail(fmt("minimum not unique at delta_c = %.4f", p.delta_c));
    }
    return pass("gain at threshold = 1 to 1e-12 (500 samples); "
                "rest threshold >= minimum on 10^4-point grid, equality only at NU0");
}

// 4. Mean-field map gain reproduces the analytic threshold.
Outcome criterion_meanfield_threshold() {
    test::ParamGen gen(104);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const SystemParams base = gen.params(i >= 10); // half moving clouds
        const double analytic = stability::eta_threshold(base);

        auto gain = [&](double eta) {
            SystemParams p = base;
            p.eta = eta;
            return meanfield::iterate_step(p, Bunching{Complex(1e-6, 0.0)}).r_out.abs() /
                   1e-6;
        };
        double lo = 1e-3, hi = 10.0 * analytic + 10.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (gain(mid) > 1.0 ? hi : lo) = mid;
        }
        const double empirical = 0.5 * (lo + hi);
        const double rel = std::abs(empirical - analytic) / analytic;
        worst = std::max(worst, rel);
        if (rel >= 0.005)
            return fail(fmt("sample %d: empirical %.6f vs analytic %.6f (%.3f%%)", i,
                            empirical, analytic, 100.0 * rel));
    }
    return pass(fmt("worst relative deviation %.4f%% < 0.5%% over 20 parameter sets",
                    100.0 * worst));
}

// Shared by criteria 5 and 9: first ordered eta of one sweep column.
double empirical_column_threshold(SystemParams p, double delta_c, double eta_lo,
                                  double eta_hi) {
    p.delta_c = delta_c;
    auto ordered = [&](double eta) {
        SystemParams q = p;
        q.eta = eta;
        const auto res = meanfield::iterate_selfconsistent(
            q, Bunching{Complex(0.01, 0.0)}, 100, 1e-8);
        return res.peak_density > 1.5 * res.density.uniform_density();
    };
    double lo = eta_lo, hi = eta_hi;
    if (ordered(lo)) return lo;
    if (!ordered(hi)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 25; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ordered(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// 5. Contour minima of the self-consistent sweep sit at delta_c = NU0.
Outcome criterion_contour_minima() {
    struct Case {
        int n;
        double u0;
    };
    std::string detail;
    for (const Case c : {Case{200, -1.0 / 115.0}, Case{1000, -1.0 / 375.0}}) {
        SystemParams p;
        p.n_particles = c.n;
        p.u0 = c.u0;
        p.kappa = 1.0;
        p.kb_t = 1.0;
        const double coll = p.collective_shift();
        const double eta_min = stability::eta_threshold_min(p);

        double best_delta = 0.0, best_eta = 1e300;
        for (int i = 0; i <= 20; ++i) {
            const double delta_c = coll - 1.0 + 0.1 * i;
            const double eta =
                empirical_column_threshold(p, delta_c, 0.5 * eta_min, 4.0 * eta_min);
            if (std::isfinite(eta) && eta < best_eta) {
                best_eta = eta;
                best_delta = delta_c;
            }
        }
        if (std::abs(best_delta - coll) > 0.1 + 1e-9)
            return fail(fmt("N=%d: minimum at delta_c = %.3f, NU0 = %.3f", c.n,
                            best_delta, coll));
        detail += fmt("N=%d: min at %.3f (NU0 %+.3f, step 0.1); ", c.n, best_delta,
                      best_delta - coll);
    }
    return pass(detail);
}

// 6. Flat-to-peaked transition at the known parameter point.
Outcome criterion_density_transition() {
    SystemParams p;
    p.n_particles = 2000;
    p.u0 = -0.001;
    p.kappa = 1.0;
    p.delta_c = -2.0;
    p.kb_t = 1.0;
    const double eta_th = stability::eta_threshold(p); // sqrt(500)

    p.eta = 0.5 * eta_th;
    const auto below = meanfield::iterate_selfconsistent(
        p, Bunching{Complex(0.01, 0.0)}, 100, 1e-8);
    p.eta = 2.0 * eta_th;
    const auto above = meanfield::iterate_selfconsistent(
        p, Bunching{Complex(0.01, 0.0)}, 100, 1e-8);

    const double uniform = 1.0 / p.grating_period();
    const double flat_ratio = below.peak_density / uniform;
    const double peak_ratio = above.peak_density / uniform;
    if (flat_ratio >= 1.1)
        return fail(fmt("below threshold not flat: peak %.3fx uniform", flat_ratio));
    if (peak_ratio <= 3.0)
        return fail(fmt("above threshold not peaked: peak %.3fx uniform", peak_ratio));
    return pass(fmt("computed eta_th = %.4f = sqrt(500); alternative value 31.62 = "
                    "sqrt(1000) differs by sqrt(2) and is NOT matched; peak %.2fx "
                    "uniform at 0.5x threshold, %.1fx at 2x threshold",
                    eta_th, flat_ratio, peak_ratio));
}

// 7. Microscopic momentum conservation for the undriven lossless cavity.
Outcome criterion_momentum_conservation() {
    SystemParams p;
    p.n_particles = 200;
    p.u0 = -0.01;
    p.kappa = 0.0;
    p.delta_c = 0.4;
    p.eta = 0.0;
    p.kb_t = 1.0;
    p.mass = 100.0;

    simulate::EnsembleState s = simulate::init_ensemble(p, 0.0, 777);
    s.fields.a_plus = Complex(1.5, 0.2);
    s.fields.a_minus = Complex(0.4, -0.3);
    auto total = [&](const simulate::EnsembleState& state) {
        return std::accumulate(state.p.begin(), state.p.end(), 0.0) +
               p.k * (std::norm(state.fields.a_plus) - std::norm(state.fields.a_minus));
    };
    const double p0 = total(s);
    const double t_end = 10.0, dt = 0.001;
    double max_drift = 0.0;
    for (int i = 0; i < static_cast<int>(t_end / dt + 0.5); ++i) {
        s = simulate::step_rk4(s, p, dt);
        max_drift = std::max(max_drift, std::abs(total(s) - p0));
    }
    const double per_unit_time = max_drift / t_end;
    if (per_unit_time >= 1e-8)
        return fail(fmt("momentum drift %.3e per unit time", per_unit_time));
    return pass(fmt("total momentum drift %.3e per unit time < 1e-8 over t = 10",
                    per_unit_time));
}

// 8. N-body energy-gain contour lies above the analytic threshold curve.
Outcome criterion_nbody_contour() {
    SystemParams p;
    p.n_particles = 200;
    p.u0 = -0.015;
    p.kappa = 1.0;
    p.kb_t = 1.0;
    p.mass = 100.0;

    simulate::SimConfig cfg;
    cfg.t_end = 60.0;
    cfg.record_every = 1000;
    cfg.seed = 4242;

    std::vector<double> deltas(15), etas(15);
    for (int i = 0; i < 15; ++i) {
        deltas[i] = -6.0 + 6.0 * i / 14.0; // [-6, 0] around NU0 = -3
        etas[i] = 2.0 + 14.0 * i / 14.0;   // [2, 16], threshold minimum 4.71
    }
    const double bound = cfg.dt_bound([&] {
        SystemParams q = p;
        q.delta_c = deltas.front();
        return q;
    }());
    cfg.dt = std::min(0.005, bound);

    // The zero-pump run gains exactly zero energy in this noise-free
    // model, so the ordered indicator uses ten times the 0.5 hbar*kappa
    // sub-threshold heating bound instead.
    SystemParams quiet = p;
    quiet.delta_c = -3.0;
    quiet.eta = 0.0;
    const auto baseline_records = simulate::run(quiet, cfg, 0.0);
    const double baseline = baseline_records.back().kinetic_energy_per_particle -
                            baseline_records.front().kinetic_energy_per_particle;
    const double ordered_gain = 10.0 * std::max(std::abs(baseline), 0.5);

    const auto cells = simulate::sweep_sim(p, deltas, etas, cfg, 0.0, hardware_jobs());

    int ordered = 0, contained = 0;
    for (const auto& cell : cells) {
        if (!cell.error_flag.empty())
            return fail("cell error: " + cell.error_flag);
        if (cell.energy_change > ordered_gain) {
            ++ordered;
            SystemParams q = p;
            q.delta_c = cell.delta_c;
            if (cell.eta >= stability::eta_threshold(q)) ++contained;
        }
    }
    if (ordered < 10)
        return fail(fmt("only %d ordered cells; grid too coarse to judge", ordered));
    const double frac = static_cast<double>(contained) / ordered;
    if (frac < 0.9)
        return fail(fmt("%d/%d ordered cells above the analytic curve (%.0f%% < 90%%)",
                        contained, ordered, 100.0 * frac));
    return pass(fmt("zero-pump baseline %.1e; %d ordered cells, %d above the analytic "
                    "curve (%.1f%% >= 90%%)",
                    baseline, ordered, contained, 100.0 * frac));
}

// 9. Moving-beam threshold asymmetry, analytic and mean-field.
Outcome criterion_moving_asymmetry() {
    SystemParams p;
    p.n_particles = 3000;
    p.u0 = -0.0017;
    p.kappa = 1.0;
    p.kb_t = 1.0;
    p.v = 5.0;
    const double coll = p.collective_shift();

    double max_asym = 0.0;
    for (double off = 0.25; off <= 3.0; off += 0.25) {
        SystemParams hi = p, lo = p;
        hi.delta_c = coll + off;
        lo.delta_c = coll - off;
        const double a = stability::eta_threshold(hi);
        const double b = stability::eta_threshold(lo);
        max_asym = std::max(max_asym, std::abs(a - b) / std::min(a, b));
    }
    if (max_asym <= 0.10)
        return fail(fmt("analytic asymmetry %.1f%% <= 10%%", 100.0 * max_asym));

    // the mean-field ordered region shares the asymmetry direction
    std::string detail = fmt("analytic max asymmetry %.0f%%; mean-field: ", 100.0 * max_asym);
    for (double off : {1.0, 2.0}) {
        SystemParams hi = p, lo = p;
        hi.delta_c = coll + off;
        lo.delta_c = coll - off;
        const double analytic_hi = stability::eta_threshold(hi);
        const double analytic_lo = stability::eta_threshold(lo);
        const double emp_hi =
            empirical_column_threshold(p, coll + off, 0.4 * analytic_hi, 3.0 * analytic_hi);
        const double emp_lo =
            empirical_column_threshold(p, coll - off, 0.4 * analytic_lo, 3.0 * analytic_lo);
        if (!std::isfinite(emp_hi) || !std::isfinite(emp_lo))
            return fail(fmt("no empirical threshold found at offset %.1f", off));
        if ((emp_hi > emp_lo) != (analytic_hi > analytic_lo))
            return fail(fmt("asymmetry direction differs at offset %.1f "
                            "(empirical %.1f vs %.1f, analytic %.1f vs %.1f)",
                            off, emp_hi, emp_lo, analytic_hi, analytic_lo));
        detail += fmt("off %.0f: %.0f vs %.0f; ", off, emp_hi, emp_lo);
    }
    return pass(detail);
}

// 10. Split backscatter resonances for a good cavity, single peak otherwise.
Outcome criterion_backscatter_maxima() {
    SystemParams p;
    p.n_particles = 1000;
    p.u0 = -0.002; // NU0 = -2
    p.eta = 1.0;
    const double r_abs = 1.0;
    const double step = 0.005;

    auto local_maxima = [&](double kappa) {
        SystemParams q = p;
        q.kappa = kappa;
        std::vector<double> grid, intensity;
        for (double d = -4.5; d <= 0.5; d += step) {
            q.delta_c = d;
            grid.push_back(d);
            intensity.push_back(
                std::norm(dynamics::steady_fields(q, Bunching{Complex(r_abs, 0.0)}).a_minus));
        }
        std::vector<double> maxima;
        for (std::size_t i = 1; i + 1 < intensity.size(); ++i)
            if (intensity[i] > intensity[i - 1] && intensity[i] >= intensity[i + 1])
                maxima.push_back(grid[i]);
        return maxima;
    };

    const auto split = local_maxima(0.2);
    const auto roots = stability::optimal_backscatter_detuning(
        [&] {
            SystemParams q = p;
            q.kappa = 0.2;
            return q;
        }(),
        r_abs);
    if (!roots.has_value()) return fail("expected split resonances at kappa = 0.2");
    if (split.size() != 2)
        return fail(fmt("kappa = 0.2: found %zu maxima, expected 2", split.size()));
    if (std::abs(split[0] - roots->first) > step + 1e-9 ||
        std::abs(split[1] - roots->second) > step + 1e-9)
        return fail(fmt("kappa = 0.2: maxima at %.3f, %.3f vs predicted %.3f, %.3f",
                        split[0], split[1], roots->first, roots->second));

    const auto single = local_maxima(3.0);
    if (single.size() != 1 || std::abs(single[0] - (-2.0)) > step + 1e-9)
        return fail(fmt("kappa = 3: expected one maximum at NU0, found %zu", single.size()));

    return pass(fmt("kappa=0.2: maxima %.3f, %.3f match NU0 +- sqrt(N^2U0^2-k^2) = "
                    "%.3f, %.3f; kappa=3: single maximum at NU0",
                    split[0], split[1], roots->first, roots->second));
}

// 11. Fourth-order convergence of the integrator.
Outcome criterion_integrator_order() {
    SystemParams p;
    p.n_particles = 2;
    p.u0 = -0.05;
    p.kappa = 0.0;
    p.delta_c = 0.0;
    p.eta = 0.0;
    p.mass = 1.0;

    simulate::EnsembleState s0;
    s0.x = {0.4, 2.7};
    s0.p = {0.8, -0.5};
    s0.fields.a_plus = 3.0;
    s0.fields.a_minus = 1.0;

    auto integrate = [&](double dt) {
        simulate::EnsembleState s = s0;
        const long steps = std::lround(1.0 / dt);
        for (long i = 0; i < steps; ++i) s = simulate::step_rk4(s, p, dt);
        return s;
    };
    auto diff = [](const simulate::EnsembleState& a, const simulate::EnsembleState& b) {
        double m = 0.0;
        for (std::size_t j = 0; j < a.x.size(); ++j) {
            m = std::max(m, std::abs(a.x[j] - b.x[j]));
            m = std::max(m, std::abs(a.p[j] - b.p[j]));
        }
        m = std::max(m, std::abs(a.fields.a_plus - b.fields.a_plus));
        return std::max(m, std::abs(a.fields.a_minus - b.fields.a_minus));
    };
    const auto s1 = integrate(0.01);
    const auto s2 = integrate(0.005);
    const auto s3 = integrate(0.0025);
    const double ratio = diff(s1, s2) / diff(s2, s3);
    if (ratio < 13.0 || ratio > 19.0)
        return fail(fmt("Richardson ratio %.2f outside 16 +- 3", ratio));
    return pass(fmt("Richardson ratio %.2f within 16 +- 3", ratio));
}

// 12. Byte-identical outputs for identical configuration and seed.
Outcome criterion_determinism() {
    RunConfig cfg;
    cfg.command = "simulate";
    cfg.params.n_particles = 150;
    cfg.params.u0 = -0.015;
    cfg.params.kappa = 1.0;
    cfg.params.delta_c = -3.0;
    cfg.params.eta = 10.0;
    cfg.params.kb_t = 1.0;
    cfg.params.mass = 100.0;
    cfg.t_end = 5.0;
    cfg.record_every = 50;
    cfg.seed = 20260808;

    const std::string a = runner::simulate_csv(cfg);
    const std::string b = runner::simulate_csv(cfg);
    if (a != b) return fail("simulate CSV differs between identical runs");

    RunConfig sweep;
    sweep.command = "sweep-sim";
    sweep.params = cfg.params;
    sweep.delta_c_min = -3.5;
    sweep.delta_c_max = -2.5;
    sweep.delta_c_count = 2;
    sweep.eta_min = 0.0;
    sweep.eta_max = 8.0;
    sweep.eta_count = 2;
    sweep.t_end = 1.0;
    sweep.record_every = 20;
    sweep.seed = 7;
    sweep.jobs = 2;
    const std::string c = runner::sweep_sim_csv(sweep);
    sweep.jobs = 1;
    const std::string d = runner::sweep_sim_csv(sweep);
    if (c != d) return fail("sweep CSV depends on the job count");
    return pass(fmt("simulate and sweep outputs byte-identical (%zu and %zu bytes)",
                    a.size(), c.size()));
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"fixed-point closure of steady fields", criterion_fixed_point},
        {"dual-acceleration identity", criterion_dual_acceleration},
        {"threshold-gain closure and minimum", criterion_threshold_gain},
        {"mean-field gain reproduces the analytic threshold", criterion_meanfield_threshold},
        {"contour minima at delta_c = NU0", criterion_contour_minima},
        {"flat-to-peaked density transition", criterion_density_transition},
        {"N-body momentum conservation", criterion_momentum_conservation},
        {"N-body energy contour above the threshold curve", criterion_nbody_contour},
        {"moving-beam threshold asymmetry", criterion_moving_asymmetry},
        {"optimal-backscatter detunings", criterion_backscatter_maxima},
        {"integrator fourth-order convergence", criterion_integrator_order},
        {"byte-identical deterministic outputs", criterion_determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(criteria().size())) {
            std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria().size());
            return 64;
        }
    }

    int failures = 0;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        Outcome outcome;
        try {
            outcome = criteria()[i].run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %zu: %s — %s\n", outcome.pass ? "PASS" : "FAIL",
                    i + 1, criteria()[i].name, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}

#include "ringcarl/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ringcarl/meanfield.hpp"
#include "ringcarl/stability.hpp"

namespace ringcarl::runner {

namespace {

// Resolved configuration and seed, '#'-prefixed. The execution-only keys
// (out, jobs) are omitted: they cannot change any result and would break
// byte-for-byte determinism across otherwise identical runs.
std::string metadata_block(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# ring-carl " << cfg.command << "\n";
    std::istringstream lines(serialize_config(cfg));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("out = ", 0) == 0 || line.rfind("jobs = ", 0) == 0) continue;
        os << "# " << line << "\n";
    }
    return os.str();
}

std::string fmt(double v) { return format_double(v); }

void write_file(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

// "res.csv" + ".it5" -> "res.it5.csv"
std::string with_infix(const std::string& path, const std::string& infix) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + infix;
    return path.substr(0, dot) + infix + path.substr(dot);
}

double analytic_threshold_or_nan(SystemParams p, double delta_c) {
    p.delta_c = delta_c;
    try {
        return stability::eta_threshold(p);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

double resolve_dt(const RunConfig& cfg) {
    if (cfg.dt > 0.0) return cfg.dt;
    simulate::SimConfig probe;
    double bound = 0.005;
    if (cfg.command == "sweep-sim") {
        for (double d : cfg.delta_c_grid()) {
            SystemParams p = cfg.params;
            p.delta_c = d;
            bound = std::min(bound, probe.dt_bound(p));
        }
    } else {
        bound = std::min(bound, probe.dt_bound(cfg.params));
    }
    return bound;
}

std::string threshold_csv(const RunConfig& cfg) {
    const bool scan_v = cfg.scan == "v";
    const std::vector<double> grid = scan_v ? cfg.v_grid() : cfg.delta_c_grid();

    std::ostringstream os;
    os << metadata_block(cfg);
    os << (scan_v ? "v" : "delta_c") << ",eta_threshold,eta_threshold_min,linear_gain_at_eta\n";
    for (double value : grid) {
        SystemParams p = cfg.params;
        (scan_v ? p.v : p.delta_c) = value;
        os << fmt(value) << ',' << fmt(stability::eta_threshold(p)) << ','
           << fmt(stability::eta_threshold_min(p)) << ','
           << fmt(stability::linear_gain(p)) << '\n';
    }
    return os.str();
}

namespace {

std::vector<meanfield::ContourCell> meanfield_cells(const RunConfig& cfg, int iters) {
    meanfield::IterationOptions opt;
    opt.grid = cfg.grid_points;
    opt.velocity_update = cfg.velocity_update;
    opt.dt_iter = cfg.dt_iter;
    return meanfield::sweep_contour(cfg.params, cfg.delta_c_grid(), cfg.eta_grid(),
                                    cfg.r0, iters, cfg.tol, opt, cfg.jobs);
}

std::string meanfield_csv_from(const RunConfig& cfg, int iters,
                               const std::vector<meanfield::ContourCell>& cells) {
    std::ostringstream os;
    os << metadata_block(cfg);
    os << "# iterations = " << iters << "\n";
    os << "delta_c,eta,peak_density,abs_R,abs_a_minus_sq,g,converged,error_flag\n";
    for (const auto& c : cells)
        os << fmt(c.delta_c) << ',' << fmt(c.eta) << ',' << fmt(c.peak_density) << ','
           << fmt(c.abs_r) << ',' << fmt(c.abs_a_minus_sq) << ',' << fmt(c.g) << ','
           << (c.converged ? 1 : 0) << ',' << c.error_flag << '\n';
    return os.str();
}

std::string meanfield_json_from(const RunConfig& cfg, int iters,
                                const std::vector<meanfield::ContourCell>& cells) {
    const auto deltas = cfg.delta_c_grid();
    const auto etas = cfg.eta_grid();
    const double uniform = cfg.params.k / std::numbers::pi;
    const double ordered_factor = 1.5; // "ordered" when peak > 1.5x uniform

    nlohmann::json summary;
    summary["iterations"] = iters;
    summary["uniform_density"] = uniform;
    summary["ordered_factor"] = ordered_factor;
    auto& columns = summary["columns"] = nlohmann::json::array();
    for (std::size_t row = 0; row < deltas.size(); ++row) {
        nlohmann::json col;
        col["delta_c"] = deltas[row];
        col["analytic_eta_threshold"] = analytic_threshold_or_nan(cfg.params, deltas[row]);
        col["empirical_eta_threshold"] = nullptr;
        for (std::size_t j = 0; j < etas.size(); ++j) {
            const auto& c = cells[row * etas.size() + j];
            if (c.error_flag.empty() && c.peak_density > ordered_factor * uniform) {
                col["empirical_eta_threshold"] = c.eta;
                break;
            }
        }
        columns.push_back(std::move(col));
    }
    return summary.dump(2) + "\n";
}

} // namespace

std::string meanfield_csv(const RunConfig& cfg, int iters) {
    return meanfield_csv_from(cfg, iters, meanfield_cells(cfg, iters));
}

std::string meanfield_summary_json(const RunConfig& cfg, int iters) {
    return meanfield_json_from(cfg, iters, meanfield_cells(cfg, iters));
}

std::string simulate_csv(const RunConfig& cfg) {
    simulate::SimConfig sim = cfg.sim_config();
    sim.dt = resolve_dt(cfg);
    const auto records = simulate::run(cfg.params, sim, cfg.p0);

    std::ostringstream os;
    os << metadata_block(cfg);
    os << "# resolved_dt = " << fmt(sim.dt) << "\n";
    os << "t,ekin_per_particle,abs_R,arg_R,com_p,a_plus_sq,a_minus_sq\n";
    for (const auto& r : records)
        os << fmt(r.t) << ',' << fmt(r.kinetic_energy_per_particle) << ','
           << fmt(r.bunching_abs) << ',' << fmt(r.bunching_phase) << ','
           << fmt(r.com_momentum) << ',' << fmt(r.a_plus_sq) << ',' << fmt(r.a_minus_sq)
           << '\n';
    return os.str();
}

std::string sweep_sim_csv(const RunConfig& cfg) {
    simulate::SimConfig sim = cfg.sim_config();
    sim.dt = resolve_dt(cfg);
    const auto cells = simulate::sweep_sim(cfg.params, cfg.delta_c_grid(), cfg.eta_grid(),
                                           sim, cfg.p0, cfg.jobs);

    std::ostringstream os;
    os << metadata_block(cfg);
    os << "# resolved_dt = " << fmt(sim.dt) << "\n";
    os << "delta_c,eta,energy_change,mean_abs_R,final_com_p,eta_threshold,error_flag\n";
    for (const auto& c : cells)
        os << fmt(c.delta_c) << ',' << fmt(c.eta) << ',' << fmt(c.energy_change) << ','
           << fmt(c.mean_abs_r) << ',' << fmt(c.final_com_p) << ','
           << fmt(analytic_threshold_or_nan(cfg.params, c.delta_c)) << ','
           << c.error_flag << '\n';
    return os.str();
}

void run_command(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command.empty())
        throw ConfigError("no command selected (threshold | meanfield | simulate | sweep-sim)");

    if (cfg.command == "threshold") {
        write_file(cfg.out, threshold_csv(cfg));
    } else if (cfg.command == "meanfield") {
        if (cfg.out.empty()) throw ConfigError("meanfield requires an output path (out=...)");
        if (cfg.iterations_list.empty()) {
            const auto cells = meanfield_cells(cfg, cfg.max_iters);
            write_file(cfg.out, meanfield_csv_from(cfg, cfg.max_iters, cells));
            write_file(cfg.out + ".summary.json",
                       meanfield_json_from(cfg, cfg.max_iters, cells));
        } else {
            const auto counts = parse_int_list(cfg.iterations_list);
            std::vector<meanfield::ContourCell> last;
            for (int iters : counts) {
                auto cells = meanfield_cells(cfg, iters);
                write_file(with_infix(cfg.out, ".it" + std::to_string(iters)),
                           meanfield_csv_from(cfg, iters, cells));
                last = std::move(cells);
            }
            write_file(cfg.out + ".summary.json",
                       meanfield_json_from(cfg, counts.back(), last));
        }
    } else if (cfg.command == "simulate") {
        write_file(cfg.out, simulate_csv(cfg));
    } else if (cfg.command == "sweep-sim") {
        write_file(cfg.out, sweep_sim_csv(cfg));
    } else {
        throw ConfigError("unknown command '" + cfg.command + "'");
    }
}

} // namespace ringcarl::runner

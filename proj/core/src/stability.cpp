#include "ringcarl/stability.hpp"

#include <cmath>

#include "ringcarl/dynamics.hpp"

namespace ringcarl::stability {

namespace {

// sqrt((d- - NU0)^2 + kappa^2) and ((d+ - NU0)^2 + kappa^2)
std::pair<double, double> lorentzian_factors(const SystemParams& p) {
    const auto [dp, dm] = dynamics::detunings(p);
    const double coll = p.collective_shift();
    const double xm = dm - coll;
    const double xp = dp - coll;
    return {std::sqrt(xm * xm + p.kappa * p.kappa), xp * xp + p.kappa * p.kappa};
}

} // namespace

double linear_gain(const SystemParams& p) {
    if (!(p.kb_t > 0.0)) throw ZeroTemperatureError("linear_gain requires kb_t > 0");
    const auto [sm, lp] = lorentzian_factors(p);
    return p.n_particles * p.u0 * p.u0 * p.eta * p.eta / (p.kb_t * sm * lp);
}

double eta_threshold(const SystemParams& p) {
    if (p.u0 == 0.0) throw ZeroCouplingError("eta_threshold requires U0 != 0");
    const auto [sm, lp] = lorentzian_factors(p);
    return std::sqrt(p.kb_t * sm * lp / (p.n_particles * p.u0 * p.u0));
}

double eta_threshold_rest(const SystemParams& p) {
    if (p.u0 == 0.0) throw ZeroCouplingError("eta_threshold_rest requires U0 != 0");
    const double x = p.delta_c - p.collective_shift();
    const double l = x * x + p.kappa * p.kappa;
    return std::sqrt(p.kb_t * std::pow(l, 1.5) / (p.n_particles * p.u0 * p.u0));
}

double eta_threshold_min(const SystemParams& p) {
    if (p.u0 == 0.0) throw ZeroCouplingError("eta_threshold_min requires U0 != 0");
    return std::sqrt(p.kb_t * p.kappa * p.kappa * p.kappa / (p.n_particles * p.u0 * p.u0));
}

std::optional<std::pair<double, double>>
optimal_backscatter_detuning(const SystemParams& p, double r_abs) {
    if (!(r_abs >= 0.0 && r_abs <= 1.0))
        throw InvalidParamsError("r_abs must lie in [0, 1]");
    const double coll = p.collective_shift();
    const double radicand = coll * coll * r_abs * r_abs - p.kappa * p.kappa;
    if (radicand < 0.0) return std::nullopt;
    const double s = std::sqrt(radicand);
    return std::make_pair(coll - s, coll + s);
}

} // namespace ringcarl::stability

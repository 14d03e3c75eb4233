#include "ringcarl/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace ringcarl {

void SystemParams::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidParamsError(msg); };
    if (n_particles < 1) fail("n_particles must be >= 1");
    if (!(kappa >= 0.0)) fail("kappa must be >= 0");
    if (!(mass > 0.0)) fail("mass must be > 0");
    if (!(kb_t >= 0.0)) fail("kb_t must be >= 0");
    if (!(eta >= 0.0)) fail("eta must be >= 0");
    if (!(k > 0.0)) fail("k must be > 0");
    if (!std::isfinite(u0) || !std::isfinite(delta_c) || !std::isfinite(v))
        fail("u0, delta_c, v must be finite");
}

Bunching make_bunching(Complex r_minus) {
    const double a = std::abs(r_minus);
    if (!std::isfinite(a)) throw InvalidParamsError("bunching must be finite");
    if (a > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "|R| = " << a << " exceeds 1";
        throw InvalidParamsError(os.str());
    }
    return Bunching{r_minus};
}

} // namespace ringcarl

namespace ringcarl::dynamics {

namespace {

constexpr Complex I{0.0, 1.0};

struct DenominatorParts {
    Complex t_plus;  // d+ - NU0 + i kappa
    Complex t_minus; // d- - NU0 + i kappa
    Complex d;       // t+ t- - N^2 U0^2 |R|^2
};

DenominatorParts denominator_parts(const SystemParams& p, double r_abs) {
    const auto [dp, dm] = detunings(p);
    const double coll = p.collective_shift();
    DenominatorParts out;
    out.t_plus = Complex(dp - coll, p.kappa);
    out.t_minus = Complex(dm - coll, p.kappa);
    const double coupling = coll * coll * r_abs * r_abs;
    out.d = out.t_plus * out.t_minus - coupling;
    const double scale = std::abs(out.t_plus) * std::abs(out.t_minus) + coupling;
    if (std::abs(out.d) < 1e-14 * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "collective resonance: |D| = " << std::abs(out.d)
           << " at delta_c = " << p.delta_c << ", N U0 = " << coll
           << ", kappa = " << p.kappa << ", |R| = " << r_abs;
        throw SingularDenominatorError(os.str());
    }
    return out;
}

} // namespace

std::pair<double, double> detunings(const SystemParams& p) {
    return {p.delta_c + p.k * p.v, p.delta_c - p.k * p.v};
}

Complex field_denominator(const SystemParams& p, double r_abs) {
    return denominator_parts(p, r_abs).d;
}

FieldAmplitudes steady_fields(const SystemParams& p, const Bunching& r) {
    const auto parts = denominator_parts(p, r.abs());
    FieldAmplitudes f;
    f.a_plus = I * p.eta * parts.t_minus / parts.d;
    f.a_minus = I * p.eta * p.collective_shift() * r.r_minus / parts.d;
    return f;
}

Complex field_product(const SystemParams& p, const Bunching& r) {
    const auto parts = denominator_parts(p, r.abs());
    const double d2 = std::norm(parts.d);
    return p.eta * p.eta * p.collective_shift() * parts.t_minus * std::conj(r.r_minus) / d2;
}

double potential_shift_phi(const SystemParams& p) {
    const auto [dp, dm] = detunings(p);
    (void)dp;
    return std::atan2(-p.kappa, p.collective_shift() - dm);
}

double frame_acceleration(const SystemParams& p, const Bunching& r) {
    const double r_abs = r.abs();
    if (r_abs == 0.0 || p.eta == 0.0) return 0.0;
    const auto parts = denominator_parts(p, r_abs);
    const double coll2 = p.n_particles * p.u0 * p.u0; // N U0^2
    return -4.0 * p.k * p.kappa * p.eta * p.eta * coll2 * r_abs * r_abs /
           (p.mass * std::norm(parts.d));
}

double pinning_slope(const SystemParams& p, const Bunching& r) {
    const double r_abs = r.abs();
    if (r_abs == 0.0 || p.eta == 0.0) return 0.0;
    const Complex prod = field_product(p, r);
    const Complex phase = r.r_minus / r_abs; // e^{2ikx0}
    return -4.0 * p.k * p.u0 * std::imag(prod * phase);
}

double potential_at(double x, const FieldAmplitudes& f, const SystemParams& p, double g) {
    const Complex prod = f.a_plus * std::conj(f.a_minus);
    const double intensity = std::norm(f.a_plus) + std::norm(f.a_minus) +
                             2.0 * std::real(prod * std::polar(1.0, 2.0 * p.k * x));
    return p.u0 * intensity - p.mass * g * x;
}

PotentialShape potential_shape(const FieldAmplitudes& f, const SystemParams& p, double g) {
    const Complex prod = f.a_plus * std::conj(f.a_minus);
    PotentialShape shape;
    shape.depth_coefficient = std::abs(p.u0) * std::abs(prod);
    shape.alpha = std::arg(prod);
    shape.linear_slope = -p.mass * g;
    return shape;
}

double dipole_force(double x, const FieldAmplitudes& f, const SystemParams& p) {
    const Complex prod = f.a_plus * std::conj(f.a_minus);
    return 4.0 * p.k * p.u0 * std::imag(prod * std::polar(1.0, 2.0 * p.k * x));
}

std::pair<Complex, Complex> mode_rhs(const FieldAmplitudes& f, const Bunching& r,
                                     const SystemParams& p) {
    const auto [dp, dm] = detunings(p);
    const double coll = p.collective_shift();
    const Complex lp(-p.kappa, dp - coll);
    const Complex lm(-p.kappa, dm - coll);
    const Complex d_plus = lp * f.a_plus - I * coll * std::conj(r.r_minus) * f.a_minus + p.eta;
    const Complex d_minus = lm * f.a_minus - I * coll * r.r_minus * f.a_plus;
    return {d_plus, d_minus};
}

} // namespace ringcarl::dynamics

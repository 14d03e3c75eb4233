#ifndef RINGCARL_ERRORS_HPP
#define RINGCARL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ringcarl {

// Process exit codes used by the CLI. Library code throws the typed
// exceptions below; the CLI maps them to these codes.
enum class ExitCode : int {
    ok = 0,
    failure = 1,            // unexpected / internal
    config_error = 2,       // bad configuration or parameter domain
    singular_denominator = 3,
    nonfinite_state = 4,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ExitCode exit_code() const noexcept { return code_; }

private:
    ExitCode code_;
};

// Parameter set violates a documented invariant (N >= 1, kappa >= 0, ...).
class InvalidParamsError : public Error {
public:
    explicit InvalidParamsError(const std::string& what)
        : Error(ExitCode::config_error, what) {}
};

// Configuration file / command line problem, with key and line diagnostics.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what)
        : Error(ExitCode::config_error, what) {}
};

// The collective field denominator D = (d+ - NU0 + ik)(d- - NU0 + ik) - N^2 U0^2 |R|^2
// vanished: the parameters sit on an exact collective resonance.
class SingularDenominatorError : public Error {
public:
    explicit SingularDenominatorError(const std::string& what)
        : Error(ExitCode::singular_denominator, what) {}
};

// Boltzmann weighting requested at kB_T <= 0.
class ZeroTemperatureError : public Error {
public:
    explicit ZeroTemperatureError(const std::string& what)
        : Error(ExitCode::config_error, what) {}
};

// Threshold formulas are undefined at U0 = 0 (no particle-field coupling).
class ZeroCouplingError : public Error {
public:
    explicit ZeroCouplingError(const std::string& what)
        : Error(ExitCode::config_error, what) {}
};

// The tilted optical potential is monotonic over the period: the inertial
// term exceeds the maximum grating force and the quasistationary
// single-well construction does not apply.
class NoLocalMinimumError : public Error {
public:
    explicit NoLocalMinimumError(const std::string& what)
        : Error(ExitCode::config_error, what) {}
};

// An integration step produced NaN or infinity.
class NonfiniteStateError : public Error {
public:
    explicit NonfiniteStateError(const std::string& what)
        : Error(ExitCode::nonfinite_state, what) {}
};

// Short machine-readable tag for sweep sentinel rows.
inline const char* error_tag(const Error& e) {
    if (dynamic_cast<const SingularDenominatorError*>(&e)) return "singular_denominator";
    if (dynamic_cast<const NoLocalMinimumError*>(&e)) return "no_local_minimum";
    if (dynamic_cast<const ZeroTemperatureError*>(&e)) return "zero_temperature";
    if (dynamic_cast<const ZeroCouplingError*>(&e)) return "zero_coupling";
    if (dynamic_cast<const NonfiniteStateError*>(&e)) return "nonfinite_state";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    return "invalid_params";
}

} // namespace ringcarl

#endif

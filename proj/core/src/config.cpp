#include "ringcarl/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ringcarl {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::string best;
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v &&
            (best.empty() || std::strlen(buf) < best.size()))
            best = buf;
    }
    if (!best.empty()) return best;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double parse_double(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        throw ConfigError("not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || s.empty() || s[0] == '-' || errno == ERANGE)
        throw ConfigError("not an unsigned integer: '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("not a boolean (true/false): '" + s + "'");
}

struct Key {
    const char* name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define KEY_DOUBLE(name, field)                                            \
    Key{name, [](RunConfig& c, const std::string& s) { c.field = parse_double(s); }, \
        [](const RunConfig& c) { return format_double(c.field); }}
#define KEY_INT(name, field)                                               \
    Key{name, [](RunConfig& c, const std::string& s) { c.field = static_cast<int>(parse_int(s)); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }}
#define KEY_BOOL(name, field)                                              \
    Key{name, [](RunConfig& c, const std::string& s) { c.field = parse_bool(s); },   \
        [](const RunConfig& c) { return c.field ? "true" : "false"; }}
#define KEY_STRING(name, field)                                            \
    Key{name, [](RunConfig& c, const std::string& s) { c.field = s; },     \
        [](const RunConfig& c) { return c.field; }}

// Canonical key order; serialization emits exactly this sequence.
const std::vector<Key>& key_table() {
    static const std::vector<Key> keys = {
        KEY_STRING("command", command),
        KEY_STRING("out", out),
        KEY_INT("jobs", jobs),
        Key{"seed", [](RunConfig& c, const std::string& s) { c.seed = parse_uint(s); },
            [](const RunConfig& c) { return std::to_string(c.seed); }},
        KEY_INT("n_particles", params.n_particles),
        KEY_DOUBLE("u0", params.u0),
        KEY_DOUBLE("kappa", params.kappa),
        KEY_DOUBLE("delta_c", params.delta_c),
        KEY_DOUBLE("eta", params.eta),
        KEY_DOUBLE("kb_t", params.kb_t),
        KEY_DOUBLE("mass", params.mass),
        KEY_DOUBLE("k", params.k),
        KEY_DOUBLE("v", params.v),
        KEY_DOUBLE("dt", dt),
        KEY_DOUBLE("t_end", t_end),
        KEY_INT("record_every", record_every),
        KEY_STRING("field_mode", field_mode),
        KEY_DOUBLE("p0", p0),
        KEY_INT("grid_points", grid_points),
        KEY_DOUBLE("r0", r0),
        KEY_INT("max_iters", max_iters),
        KEY_DOUBLE("tol", tol),
        KEY_BOOL("velocity_update", velocity_update),
        KEY_DOUBLE("dt_iter", dt_iter),
        KEY_STRING("iterations_list", iterations_list),
        KEY_DOUBLE("delta_c_min", delta_c_min),
        KEY_DOUBLE("delta_c_max", delta_c_max),
        KEY_INT("delta_c_count", delta_c_count),
        KEY_DOUBLE("eta_min", eta_min),
        KEY_DOUBLE("eta_max", eta_max),
        KEY_INT("eta_count", eta_count),
        KEY_DOUBLE("v_min", v_min),
        KEY_DOUBLE("v_max", v_max),
        KEY_INT("v_count", v_count),
        KEY_STRING("scan", scan),
    };
    return keys;
}

#undef KEY_DOUBLE
#undef KEY_INT
#undef KEY_BOOL
#undef KEY_STRING

const Key* find_key(const std::string& name) {
    for (const Key& k : key_table())
        if (name == k.name) return &k;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid[i] = lo + i * step;
    grid.back() = hi;
    return grid;
}

} // namespace

std::vector<double> RunConfig::delta_c_grid() const {
    return linspace(delta_c_min, delta_c_max, delta_c_count);
}

std::vector<double> RunConfig::eta_grid() const {
    return linspace(eta_min, eta_max, eta_count);
}

std::vector<double> RunConfig::v_grid() const { return linspace(v_min, v_max, v_count); }

simulate::SimConfig RunConfig::sim_config() const {
    simulate::SimConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.record_every = record_every;
    cfg.seed = seed;
    cfg.field_mode = field_mode == "adiabatic" ? simulate::FieldMode::adiabatic
                                               : simulate::FieldMode::dynamic;
    return cfg;
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!command.empty() && command != "threshold" && command != "meanfield" &&
        command != "simulate" && command != "sweep-sim")
        throw ConfigError("unknown command '" + command + "'");
    if (field_mode != "dynamic" && field_mode != "adiabatic")
        throw ConfigError("field_mode must be dynamic or adiabatic");
    if (scan != "delta_c" && scan != "v")
        throw ConfigError("scan must be delta_c or v");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (delta_c_count < 1 || eta_count < 1 || v_count < 1)
        throw ConfigError("grid counts must be >= 1");
    if (delta_c_count > 1 && !(delta_c_min <= delta_c_max))
        throw ConfigError("delta_c_min must be <= delta_c_max");
    if (eta_count > 1 && !(eta_min <= eta_max))
        throw ConfigError("eta_min must be <= eta_max");
    if (v_count > 1 && !(v_min <= v_max)) throw ConfigError("v_min must be <= v_max");
    if (grid_points < 64) throw ConfigError("grid_points must be >= 64");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
    if (!(r0 >= 0.0 && r0 <= 1.0)) throw ConfigError("r0 must lie in [0, 1]");
    if (!(dt >= 0.0)) throw ConfigError("dt must be >= 0 (0 = auto)");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
    if (record_every < 1) throw ConfigError("record_every must be >= 1");
    if (!iterations_list.empty()) parse_int_list(iterations_list);
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
    std::istringstream is(text);
    std::string line;
    std::set<std::string> seen;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const Key* entry = find_key(key);
        if (!entry)
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
        try {
            entry->set(base, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ", key '" + key +
                              "': " + e.what());
        }
    }
    return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str(), std::move(base));
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    const Key* entry = find_key(key);
    if (!entry) throw ConfigError("unknown key '" + key + "'");
    try {
        entry->set(cfg, value);
    } catch (const ConfigError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    for (const Key& k : key_table()) os << k.name << " = " << k.get(cfg) << "\n";
    return os.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        const long long v = parse_int(item);
        if (v < 1) throw ConfigError("iteration counts must be >= 1");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("empty integer list");
    return out;
}

} // namespace ringcarl

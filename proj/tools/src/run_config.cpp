#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <qpulse/optimal.hpp>

namespace qtool {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
        if (!std::isfinite(x)) throw ConfigError(key + ": value must be finite");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(key + ": cannot parse '" + v + "' as a real number");
    }
}

long long parse_ll(const std::string& key, const std::string& v) {
    long long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(key + ": cannot parse '" + v + "' as an integer");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(key + ": cannot parse '" + v + "' as an unsigned integer");
    return x;
}

std::vector<double> parse_grid(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        const std::size_t comma = v.find(',', start);
        const std::string item =
            trim(v.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) out.push_back(parse_double(key, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "n_theta")
            cfg.n_theta = static_cast<int>(parse_ll(key, val));
        else if (key == "theta") {
            cfg.theta = parse_double(key, val);
            cfg.theta_set = true;
        } else if (key == "phi") {
            cfg.phi = parse_double(key, val);
            cfg.phi_set = true;
        } else if (key == "lambda")
            cfg.lambda = parse_double(key, val);
        else if (key == "alpha") {
            cfg.alpha = parse_double(key, val);
            cfg.alpha_set = true;
        } else if (key == "r_grid")
            cfg.r_grid = parse_grid(key, val);
        else if (key == "ensemble")
            cfg.ensemble = static_cast<int>(parse_ll(key, val));
        else if (key == "seed")
            cfg.seed = parse_u64(key, val);
        else if (key == "dim")
            cfg.dim = static_cast<int>(parse_ll(key, val));
        else if (key == "max_iters")
            cfg.max_iters = static_cast<int>(parse_ll(key, val));
        else if (key == "tol")
            cfg.tol = parse_double(key, val);
        else if (key == "threads")
            cfg.threads = static_cast<int>(parse_ll(key, val));
        else if (key == "out_dir")
            cfg.out_dir = val;
        else
            throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

void apply_thread_env(RunConfig& cfg, const char* value) {
    if (!value || !*value) return;
    const std::string v(value);
    long long t = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), t);
    if (ec != std::errc() || p != v.data() + v.size() || t < 1)
        throw ConfigError("thread override must be a positive integer, got '" + v + "'");
    cfg.threads = static_cast<int>(t);
}

void finalize_defaults(RunConfig& cfg) {
    if (!cfg.theta_set) cfg.theta = kPi / 2.0;
    if (!cfg.phi_set) cfg.phi = kPi / 2.0;
    if (!cfg.alpha_set)
        cfg.alpha = cfg.experiment == "converge-opposite-phase" ? -5.0 : 5.0;
}

std::vector<std::string> validate(const RunConfig& cfg) {
    static const std::set<std::string> known = {
        "converge-pi", "converge-opposite-phase", "squeeze-sweep", "state-gen",
        "mixed-ancilla", "appendix", "error-eval"};
    std::vector<std::string> diags;
    if (!known.count(cfg.experiment))
        diags.push_back("unknown experiment '" + cfg.experiment + "'");
    if (cfg.n_theta < 1) diags.push_back("n_theta must be >= 1");
    const bool theta_ok = cfg.theta > 0.0 && 2.0 * cfg.theta <= kPi + 1e-12;
    if (!theta_ok)
        diags.push_back("rotation angle 2*theta = " + std::to_string(2.0 * cfg.theta) +
                        " must lie in (0, pi]");
    if (!(cfg.lambda >= 0.0) || cfg.lambda >= 0.5)
        diags.push_back("lambda must lie in [0, 1/2)");
    if (cfg.ensemble < 1) diags.push_back("ensemble must be >= 1");
    if (cfg.max_iters < 1) diags.push_back("max_iters must be >= 1");
    if (!(cfg.tol > 0.0)) diags.push_back("tol must be > 0");
    if (cfg.threads < 1) diags.push_back("threads must be >= 1");
    if (cfg.dim != 0 && theta_ok && cfg.n_theta >= 1) {
        const qpulse::PulseSpec spec{cfg.theta, cfg.phi, cfg.n_theta, 0};
        const int required = spec.support_end() + 1; // must hold the full recursion support
        if (cfg.dim < required)
            diags.push_back("dim " + std::to_string(cfg.dim) +
                            " is below the required minimum " + std::to_string(required) +
                            " for theta=" + std::to_string(cfg.theta) +
                            ", n_theta=" + std::to_string(cfg.n_theta));
    } else if (cfg.dim != 0 && cfg.dim < 2) {
        diags.push_back("dim must be 0 (automatic) or >= 2");
    }
    if (cfg.experiment == "squeeze-sweep") {
        if (cfg.r_grid.empty()) diags.push_back("r_grid must contain at least one value");
        for (double r : cfg.r_grid)
            if (!(r >= 0.0)) {
                diags.push_back("r_grid values must be >= 0");
                break;
            }
    }
    return diags;
}

} // namespace qtool

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <qpulse/errors.hpp>

#include "experiments.hpp"
#include "outputs.hpp"
#include "run_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_failure_summary(const std::string& out_dir, const char* error_type,
                           const std::string& message) {
    try {
        std::filesystem::create_directories(out_dir);
        qtool::ordered_json doc{
            {"status", "error"}, {"error_type", error_type}, {"message", message}};
        qtool::write_json(std::filesystem::path(out_dir) / "summary.json", doc);
    } catch (...) {
        // the diagnostic file is best-effort; the exit code carries the verdict
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recycled-ancilla field engine: fixed-point states, gate errors, "
                 "perturbative identity checks"};
    app.get_formatter()->column_width(26);

    std::string experiment, config_path, out_dir;
    std::uint64_t seed = 0;
    int n_theta = 0, dim = 0;
    double theta = 0.0, phi = 0.0, lambda = 0.0;

    app.add_option("experiment", experiment,
                   "one of: converge-pi | converge-opposite-phase | squeeze-sweep | "
                   "state-gen | mixed-ancilla | appendix | error-eval")
        ->required();
    app.add_option("--config", config_path, "key=value experiment description")->required();
    auto* o_seed = app.add_option("--seed", seed, "ensemble / reproducibility seed");
    auto* o_out = app.add_option("--out", out_dir, "output directory (created if absent)");
    auto* o_n = app.add_option("--n-theta", n_theta, "design mean photon number");
    auto* o_theta = app.add_option("--theta", theta, "ancilla colatitude in radians");
    auto* o_phi = app.add_option("--phi", phi, "ancilla azimuth in radians");
    auto* o_lambda = app.add_option("--lambda", lambda, "orthogonal preparation-error weight");
    auto* o_dim = app.add_option("--dim", dim, "Fock-space truncation dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    qtool::RunConfig cfg;
    try {
        cfg = qtool::load_config(config_path);
        cfg.experiment = experiment;
        if (o_seed->count()) cfg.seed = seed;
        if (o_out->count()) cfg.out_dir = out_dir;
        if (o_n->count()) cfg.n_theta = n_theta;
        if (o_theta->count()) {
            cfg.theta = theta;
            cfg.theta_set = true;
        }
        if (o_phi->count()) {
            cfg.phi = phi;
            cfg.phi_set = true;
        }
        if (o_lambda->count()) cfg.lambda = lambda;
        if (o_dim->count()) cfg.dim = dim;
        qtool::apply_thread_env(cfg, std::getenv("QPULSE_THREADS"));
        qtool::finalize_defaults(cfg);

        const std::vector<std::string> problems = qtool::validate(cfg);
        if (!problems.empty()) {
            for (const std::string& p : problems) std::cerr << "config error: " << p << "\n";
            return kExitConfig;
        }
    } catch (const qtool::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        qtool::run_experiment(cfg);
    } catch (const qpulse::DegenerateAncilla& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qpulse::DimensionTooSmall& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qpulse::TruncationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        write_failure_summary(cfg.out_dir, "truncation", e.what());
        return kExitNumerical;
    } catch (const qtool::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        write_failure_summary(cfg.out_dir, "convergence", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}

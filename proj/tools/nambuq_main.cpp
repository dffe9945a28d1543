#include "nambuq/config.hpp"
#include "nambuq/dynamics.hpp"
#include "nambuq/infotheory.hpp"
#include "nambuq/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace nambuq;

std::optional<std::uint64_t> env_seed_override() {
    const char* raw = std::getenv("NAMBUQ_SEED");
    if (raw == nullptr) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw ConfigError("NAMBUQ_SEED is not an unsigned integer: '" + std::string(raw) + "'");
    return static_cast<std::uint64_t>(v);
}

struct InvariantRow {
    std::string name;
    double value;
    double bound;
    bool lower_bound; // pass when value >= bound instead of <=
};

int cmd_run(const std::string& config_path, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const SimConfig cfg = load_config(config_path, env_seed_override());
    const Trajectory traj = evolve(cfg.spec);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    write_trajectory_csv(out, traj, cfg.outputs);
    out.close();

    const auto& d0 = traj.diagnostics.front();
    double fdrift = 0.0, eigdrift = 0.0, mineig = d0.eigenvalues.minCoeff();
    double sdrift = 0.0, edrift = 0.0;
    for (const auto& d : traj.diagnostics) {
        for (std::size_t k = 0; k < 5; ++k)
            fdrift = std::max(fdrift,
                              std::abs(d.moments[k] - d0.moments[k]) / std::abs(d0.moments[k]));
        eigdrift = std::max(eigdrift, (d.eigenvalues - d0.eigenvalues).cwiseAbs().maxCoeff());
        mineig = std::min(mineig, d.eigenvalues.minCoeff());
        sdrift = std::max(sdrift, std::abs(d.entropy_value - d0.entropy_value) /
                                      std::abs(d0.entropy_value));
        edrift = std::max(edrift, std::abs(d.energy - d0.energy));
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const double tol = cfg.spec.tolerance;
    const std::vector<InvariantRow> rows{
        {"max relative drift of f1..f5", fdrift, tol, false},
        {"max eigenvalue drift", eigdrift, 1e-6, false},
        {"min eigenvalue over run", mineig, -1e-8, true},
        {"relative drift of S", sdrift, tol, false},
        {"absolute drift of energy", edrift, tol, false},
    };
    std::cout << "wrote " << traj.states.size() << " records to " << out_path << " ("
              << format_g12(wall) << " s)\n";
    std::cout << "invariant summary:\n";
    for (const auto& r : rows) {
        const bool pass = r.lower_bound ? r.value >= r.bound : r.value <= r.bound;
        std::cout << "  " << r.name << " = " << format_g12(r.value)
                  << (r.lower_bound ? "  (>= " : "  (<= ") << format_g12(r.bound) << ") "
                  << (pass ? "PASS" : "FAIL") << '\n';
    }
    return 0;
}

struct SweepRow {
    double alpha = 0.0;
    double eig_drift = 0.0;
    bool has_oracle = false;
    double oracle_dev = 0.0;
    std::vector<double> averages;
    std::string error;
};

SweepRow sweep_one(const SimConfig& base, EntropyGenerator::Kind kind, double alpha) {
    SweepRow row;
    row.alpha = alpha;
    try {
        EvolutionSpec spec = base.spec;
        spec.generator = (kind == EntropyGenerator::Kind::renyi_pure)
                             ? EntropyGenerator::renyi_pure(alpha)
                             : EntropyGenerator::renyi_homogeneous(alpha);
        const Trajectory traj = evolve(spec);

        const auto& d0 = traj.diagnostics.front();
        for (const auto& d : traj.diagnostics)
            row.eig_drift = std::max(
                row.eig_drift, (d.eigenvalues - d0.eigenvalues).cwiseAbs().maxCoeff());

        const double tr = spec.rho0.trace();
        const double purity = spec.rho0.matrix().squaredNorm() / (tr * tr);
        double factor = 0.0;
        if (purity > 1.0 - 1e-12) {
            // pure states ride the linear flow: unit speed for the homogeneous
            // family, alpha/(2(alpha-1)) for the pure-state-normalized one
            factor = (kind == EntropyGenerator::Kind::renyi_pure)
                         ? alpha / (2.0 * (alpha - 1.0))
                         : 1.0;
            row.has_oracle = true;
        } else if (alpha == 2.0) {
            factor = 1.0; // exactly the linear theory, mixed states included
            row.has_oracle = true;
        }
        if (row.has_oracle) {
            for (std::size_t i = 0; i < traj.states.size(); ++i)
                row.oracle_dev = std::max(
                    row.oracle_dev,
                    trace_distance(traj.states[i],
                                   exact_linear(spec.hamiltonian, spec.rho0,
                                                factor * traj.times[i])));
        }
        for (const auto& obs : base.outputs)
            row.averages.push_back(observable_average(traj, obs.matrix).back());
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        row.error = msg;
    }
    return row;
}

int cmd_sweep(const std::string& config_path, std::vector<double> alphas,
              const std::string& out_path) {
    if (alphas.empty()) throw ConfigError("sweep needs at least one alpha");
    const SimConfig cfg = load_config(config_path, env_seed_override());
    const EntropyGenerator::Kind kind = cfg.spec.generator.kind();
    if (kind != EntropyGenerator::Kind::renyi_homogeneous &&
        kind != EntropyGenerator::Kind::renyi_pure)
        throw ConfigError("sweep needs a renyi_hom or renyi_pure generator in the config");

    std::sort(alphas.begin(), alphas.end());
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(alphas.size());
    for (double a : alphas)
        futures.push_back(std::async(std::launch::async, sweep_one, std::cref(cfg), kind, a));

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << "alpha,max_eig_drift,max_oracle_dev";
    for (const auto& obs : cfg.outputs) out << ',' << obs.label;
    out << ",error\n";
    for (auto& f : futures) {
        const SweepRow row = f.get();
        out << format_g12(row.alpha) << ',';
        if (row.error.empty()) {
            out << format_g12(row.eig_drift) << ','
                << (row.has_oracle ? format_g12(row.oracle_dev) : std::string());
            for (double v : row.averages) out << ',' << format_g12(v);
            out << ",\n";
        } else {
            out << ',';
            for (std::size_t i = 0; i < cfg.outputs.size(); ++i) out << ',';
            out << ',' << row.error << '\n';
        }
    }
    std::cout << "wrote " << alphas.size() << " sweep rows to " << out_path << '\n';
    return 0;
}

int cmd_entropy(const std::vector<double>& dist, double alpha, double base) {
    const ProbDist p(dist);
    const LogBase lb(base);
    std::cout << "shannon    = " << format_g12(shannon(p, lb)) << '\n';
    if (alpha == 1.0) {
        std::cout << "renyi      = (alpha=1: reported by shannon above)\n";
    } else {
        std::cout << "renyi      = " << format_g12(renyi(p, alpha, lb)) << '\n';
    }
    std::cout << "renyi_star = " << format_g12(renyi_star(p, alpha)) << '\n';
    std::cout << "daroczy    = " << format_g12(daroczy(p, alpha)) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triple-bracket density-matrix dynamics harness"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "integrate one config and write a trajectory CSV");
    std::string run_config, run_out;
    run->add_option("--config", run_config, "JSON config file")->required();
    run->add_option("--out", run_out, "trajectory CSV path")->required();

    auto* verify = app.add_subcommand("verify", "run a property-verification suite");
    std::string suite;
    VerifyOptions vopt;
    verify->add_option("--suite", suite,
                       "brackets|conservation|nosignal|jacobi|entropy|all")
        ->required();
    verify->add_option("--seed", vopt.seed, "base seed (default 1)");
    verify->add_option("--trials", vopt.trials, "trial count (0 = suite default)")
        ->check(CLI::NonNegativeNumber);

    auto* sweep = app.add_subcommand("sweep", "run an alpha family and aggregate a CSV");
    std::string sweep_config, sweep_out;
    std::vector<double> alphas;
    sweep->add_option("--config", sweep_config, "JSON base config")->required();
    sweep->add_option("--alphas", alphas, "comma-separated alpha list")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sweep_out, "aggregate CSV path")->required();

    auto* entropy = app.add_subcommand("entropy", "evaluate entropies of one distribution");
    std::vector<double> dist;
    double alpha = 2.0, base = 2.0;
    entropy->add_option("--dist", dist, "comma-separated probabilities")
        ->required()
        ->delimiter(',');
    entropy->add_option("--alpha", alpha, "order parameter")->required();
    entropy->add_option("--base", base, "logarithm base (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_config, run_out);
        if (verify->parsed()) return run_verify_suite(suite, vopt, std::cout) ? 0 : 2;
        if (sweep->parsed()) return cmd_sweep(sweep_config, alphas, sweep_out);
        if (entropy->parsed()) return cmd_entropy(dist, alpha, base);
    } catch (const DriftAlarm& e) {
        std::cerr << "drift alarm: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

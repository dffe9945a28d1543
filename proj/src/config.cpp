#include "nambuq/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace nambuq {

namespace {

using nlohmann::json;

const json& need(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("config: missing required field '" + key + "'");
    return j.at(key);
}

double need_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError("config: '" + field + "' must be a number");
    return j.get<double>();
}

} // namespace

Matrix parse_matrix(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw ConfigError("config: '" + field + "' must be a nonempty array of rows");
    const std::size_t d = j.size();
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r) {
        const json& row = j.at(r);
        if (!row.is_array() || row.size() != d)
            throw ConfigError("config: '" + field + "' row " + std::to_string(r) +
                              " must have " + std::to_string(d) + " entries (square matrix)");
        for (std::size_t c = 0; c < d; ++c) {
            const json& cell = row.at(c);
            if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
                !cell.at(1).is_number())
                throw ConfigError("config: '" + field + "' entry (" + std::to_string(r) +
                                  "," + std::to_string(c) + ") must be an [re, im] pair");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

EntropyGenerator parse_generator(const nlohmann::json& j,
                                 const std::optional<BipartiteShape>& shape) {
    if (!j.is_object()) throw ConfigError("config: 'generator' must be an object");
    const std::string kind = need(j, "kind").is_string()
        ? j.at("kind").get<std::string>()
        : throw ConfigError("config: generator 'kind' must be a string");

    auto alpha_of = [&j]() { return need_number(need(j, "alpha"), "generator.alpha"); };

    try {
        if (kind == "quadratic") return EntropyGenerator::quadratic();
        if (kind == "renyi_hom") return EntropyGenerator::renyi_homogeneous(alpha_of());
        if (kind == "renyi_pure") return EntropyGenerator::renyi_pure(alpha_of());
        if (kind == "smooth_f2") {
            const json& g = need(j, "g");
            const std::string form = need(g, "form").get<std::string>();
            if (form == "half_square") return EntropyGenerator::smooth_f2(half_square_fn());
            if (form == "power")
                return EntropyGenerator::smooth_f2(
                    power_fn(need_number(need(g, "exponent"), "generator.g.exponent")));
            throw ConfigError("config: generator.g.form must be 'half_square' or 'power'");
        }
        if (kind == "composite") {
            const json& parts = need(j, "parts");
            if (!parts.is_array() || parts.empty())
                throw ConfigError("config: generator.parts must be a nonempty array");
            std::vector<CompositePart> out;
            for (const json& p : parts) {
                CompositePart cp{
                    std::make_shared<EntropyGenerator>(
                        parse_generator(need(p, "generator"), shape)),
                    need_number(need(p, "weight"), "generator.parts[].weight"),
                    std::nullopt};
                if (p.contains("subsystem") && !p.at("subsystem").is_null()) {
                    const std::string side = p.at("subsystem").get<std::string>();
                    if (!shape)
                        throw ConfigError(
                            "config: subsystem parts need a top-level 'shape'");
                    if (side != "first" && side != "second")
                        throw ConfigError(
                            "config: subsystem must be 'first', 'second', or null");
                    cp.subsystem = SubsystemSelector{
                        *shape, side == "first" ? Subsystem::first : Subsystem::second};
                }
                out.push_back(std::move(cp));
            }
            return EntropyGenerator::composite(std::move(out));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: generator: ") + e.what());
    }
    throw ConfigError("config: unknown generator kind '" + kind + "'");
}

SimConfig parse_config(const nlohmann::json& j,
                       std::optional<std::uint64_t> seed_override) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

    std::optional<BipartiteShape> shape;
    if (j.contains("shape")) {
        const json& s = j.at("shape");
        try {
            shape = BipartiteShape(need(s, "d1").get<int>(), need(s, "d2").get<int>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: shape: ") + e.what());
        }
    }

    try {
        HermitianMatrix h(parse_matrix(need(j, "hamiltonian"), "hamiltonian"));

        const json& r0 = need(j, "rho0");
        auto rho0 = [&]() -> DensityMatrix {
            if (r0.is_object() && r0.contains("random")) {
                const json& r = r0.at("random");
                std::uint64_t seed = need(r, "seed").get<std::uint64_t>();
                if (seed_override) seed = *seed_override;
                return random_density(need(r, "dim").get<int>(),
                                      need(r, "rank").get<int>(), seed);
            }
            return DensityMatrix(parse_matrix(r0, "rho0"));
        }();

        const bool allow_unnormalized =
            j.value("allow_unnormalized", false);
        if (!allow_unnormalized && std::abs(rho0.trace() - 1.0) > 1e-10)
            throw ConfigError(
                "config: rho0 must have unit trace (or set allow_unnormalized)");

        EvolutionSpec spec{std::move(h), parse_generator(need(j, "generator"), shape),
                           std::move(rho0),
                           need_number(need(j, "t_final"), "t_final"),
                           j.contains("dt") ? need_number(j.at("dt"), "dt") : 1e-3,
                           j.value("record_every", 100),
                           j.contains("tolerance")
                               ? need_number(j.at("tolerance"), "tolerance")
                               : 1e-6};
        if (spec.hamiltonian.dim() != spec.rho0.dim())
            throw ConfigError("config: hamiltonian and rho0 dimensions differ");
        if (!(spec.t_final >= 0.0)) throw ConfigError("config: t_final must be >= 0");
        if (!(spec.dt > 0.0)) throw ConfigError("config: dt must be positive");
        if (spec.t_final > 0.0 && spec.dt > spec.t_final)
            throw ConfigError("config: dt must not exceed t_final");
        if (spec.record_every < 1)
            throw ConfigError("config: record_every must be a positive integer");
        if (shape && shape->total() != spec.rho0.dim())
            throw ConfigError("config: shape d1*d2 must equal the state dimension");

        SimConfig cfg{std::move(spec), {}, shape};
        if (j.contains("outputs")) {
            const json& outs = j.at("outputs");
            if (!outs.is_array()) throw ConfigError("config: 'outputs' must be an array");
            for (const json& o : outs) {
                LabeledObservable lo{need(o, "label").get<std::string>(),
                                     HermitianMatrix(parse_matrix(need(o, "matrix"),
                                                                  "outputs[].matrix"))};
                if (lo.matrix.dim() != cfg.spec.rho0.dim())
                    throw ConfigError("config: observable '" + lo.label +
                                      "' dimension does not match the state");
                cfg.outputs.push_back(std::move(lo));
            }
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: malformed value: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

SimConfig load_config(const std::string& path,
                      std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j, seed_override);
}

std::string format_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<LabeledObservable>& outputs) {
    const int d = traj.states.empty() ? 0 : traj.states.front().dim();
    os << "t,f1,f2,f3,f4,f5";
    for (int i = 1; i <= d; ++i) os << ",eig_" << i;
    os << ",S_value,energy";
    for (const auto& o : outputs) os << ',' << o.label;
    os << '\n';

    std::vector<std::vector<double>> averages;
    averages.reserve(outputs.size());
    for (const auto& o : outputs) averages.push_back(observable_average(traj, o.matrix));

    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const StepDiagnostics& dg = traj.diagnostics[i];
        os << format_g12(dg.time);
        for (double f : dg.moments) os << ',' << format_g12(f);
        for (int k = 0; k < dg.eigenvalues.size(); ++k)
            os << ',' << format_g12(dg.eigenvalues(k));
        os << ',' << format_g12(dg.entropy_value) << ',' << format_g12(dg.energy);
        for (const auto& col : averages) os << ',' << format_g12(col[i]);
        os << '\n';
    }
}

} // namespace nambuq

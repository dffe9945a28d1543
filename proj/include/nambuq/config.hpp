#pragma once

#include "nambuq/dynamics.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nambuq {

// Input problems (missing files, schema violations, module invariant
// failures at load).  The CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LabeledObservable {
    std::string label;
    HermitianMatrix matrix;
};

struct SimConfig {
    EvolutionSpec spec;
    std::vector<LabeledObservable> outputs;
    std::optional<BipartiteShape> shape;
};

// Matrix literal: nested arrays of [re, im] pairs, row-major.
Matrix parse_matrix(const nlohmann::json& j, const std::string& field);

// Generator grammar:
//   {"kind": "quadratic" | "renyi_hom" | "renyi_pure" | "smooth_f2" | "composite",
//    "alpha": number?,
//    "g": {"form": "half_square" | "power", "exponent": number}?,
//    "parts": [{"generator": {...}, "weight": number,
//               "subsystem": "first" | "second" | null}]?}
// Subsystem-wrapped parts need the surrounding config to carry a "shape".
EntropyGenerator parse_generator(const nlohmann::json& j,
                                 const std::optional<BipartiteShape>& shape);

// Full config schema (JSON object):
//   hamiltonian   matrix literal                              (required)
//   rho0          matrix literal or {"random": {"dim", "rank", "seed"}}
//   generator     generator grammar                           (required)
//   t_final       real ≥ 0                                    (required)
//   dt            real > 0                    (default 1e-3)
//   record_every  positive integer            (default 100)
//   tolerance     drift alarm threshold       (default 1e-6)
//   outputs       [{"label", "matrix"}]       (default none)
//   shape         {"d1", "d2"}                (optional)
//   allow_unnormalized  bool                  (default false: Tr ρ0 must be 1)
// seed_override (from NAMBUQ_SEED) replaces the seed of a random rho0.
SimConfig parse_config(const nlohmann::json& j,
                       std::optional<std::uint64_t> seed_override = {});

SimConfig load_config(const std::string& path,
                      std::optional<std::uint64_t> seed_override = {});

// Fixed 12-significant-digit formatting used by every CSV emitter so runs
// are byte-stable.
std::string format_g12(double x);

// Columns: t, f1..f5, eig_1..eig_d (ascending), S_value, energy, then one
// column per labeled observable average.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<LabeledObservable>& outputs);

} // namespace nambuq

#pragma once

#include "nambuq/generators.hpp"
#include "nambuq/matrixcore.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace nambuq {

// One integration problem: i·dρ/dτ = [Ĥ, ∇S(ρ)] from ρ0 over [0, t_final].
struct EvolutionSpec {
    HermitianMatrix hamiltonian;
    EntropyGenerator generator;
    DensityMatrix rho0;
    double t_final = 0.0;
    double dt = 1e-3;
    int record_every = 1;
    double tolerance = 1e-6; // moment-drift alarm threshold (relative)
};

struct StepDiagnostics {
    double time = 0.0;
    std::array<double, 5> moments{}; // f₁..f₅ = Tr(ρ^k)
    RealVector eigenvalues;          // ascending
    double entropy_value = 0.0;      // value(S, ρ)
    double energy = 0.0;             // Tr(ρĤ)
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<StepDiagnostics> diagnostics;
};

// Raised when a conserved moment drifts past the spec tolerance mid-run.
class DriftAlarm : public std::runtime_error {
public:
    DriftAlarm(double t, int k, double rel_drift);

    double time;
    int moment_index; // 1-based k of the drifting f_k
    double drift;
};

// −i[Ĥ, ∇S(ρ)]: Hermitian, traceless by commutator cyclicity.
HermitianMatrix rhs(const DensityMatrix& rho, const EvolutionSpec& spec);

// Classical fixed-step RK4 with per-step re-Hermitization (ρ+ρ†)/2 and NO
// projection back to the positive cone — positivity preservation is one of
// the theorems under test.  Steps = round(t_final/dt); recorded times are
// exact step multiples; diagnostics recorded every record_every steps plus
// the endpoints.  Domain errors mid-run are rethrown with the failing time.
Trajectory evolve(const EvolutionSpec& spec);

// U ρ0 U† with U = exp(−iĤt) by spectral decomposition: the exact linear
// oracle the nonlinear reductions are compared against.
DensityMatrix exact_linear(const HermitianMatrix& hamiltonian,
                           const DensityMatrix& rho0, double t);

// ½‖A−B‖₁: half the sum of absolute eigenvalues of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// For S = g(f₂) the motion is the linear one under the rescaled time
// C₀·t with C₀ = 2g′(f₂[ρ0]); returns the max trace distance between the
// integrated trajectory and the rescaled oracle over recorded times.
double time_rescaling_check(const EntropyGenerator& g, const HermitianMatrix& hamiltonian,
                            const DensityMatrix& rho0, double t_final, double dt);

// Tr(ρ_t F̂)/Tr(ρ_t) at each recorded time.
std::vector<double> observable_average(const Trajectory& traj, const HermitianMatrix& obs);

// For a composite generator whose parts act on subsystem reductions,
// evolves (interaction allowed in Ĥ) and returns the max drift of each
// sub-entropy S_k[ρ_k(t)] over the trajectory.
std::vector<double> subentropy_conservation_check(const EvolutionSpec& spec,
                                                  const BipartiteShape& shape);

} // namespace nambuq

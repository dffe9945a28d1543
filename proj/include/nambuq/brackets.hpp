#pragma once

#include "nambuq/generators.hpp"
#include "nambuq/matrixcore.hpp"

#include <functional>

namespace nambuq {

// Scalar functional of a state together with a way to get its operator
// gradient: either a closed form (validated against finite differences on a
// probe state at construction) or finite differences on demand.  Functionals
// evaluate on raw Hermitian matrices so nested differentiation can probe a
// neighborhood of a state.
class Functional {
public:
    using Evaluator = std::function<double(const Matrix&)>;
    using GradientFn = std::function<Matrix(const Matrix&)>;

    // Closed-form gradient, cross-checked against central differences at
    // `probe` (relative Frobenius mismatch above 1e-6 is a construction bug).
    Functional(Evaluator f, GradientFn grad, const DensityMatrix& probe,
               double fd_step = 1e-5);

    static Functional finite_difference(Evaluator f, double fd_step = 1e-5);

    double eval(const Matrix& rho) const { return f_(rho); }
    Matrix grad(const Matrix& rho) const;

private:
    Functional() = default;

    Evaluator f_;
    GradientFn grad_; // null ⇒ finite differences
    double step_ = 1e-5;
};

// F[ρ] = Tr(ρÂ) with gradient Â.
Functional linear_observable(const HermitianMatrix& a);

// f_m[ρ] = Tr(ρ^m) with gradient m·ρ^{m−1} (repeated products, so it stays
// defined off the positive cone).
Functional moment_functional(int m, int dim);

// The entropy generator as a bracket slot.
Functional generator_functional(const EntropyGenerator& s, int dim);

// F[ρ] = local[reduced ρ]; the gradient lifts back as (∇local) ⊗ I.
Functional reduced_functional(Functional local, const BipartiteShape& shape,
                              Subsystem keep);

// [F, G, H](ρ) = −i·Tr([∇F, ∇G]·∇H) at ρ.  The trace of a product of three
// Hermitian gradients against a commutator is purely imaginary, so the
// result is real; a residue above 1e-8 means a broken gradient.
double triple_bracket(const Functional& f, const Functional& g, const Functional& h,
                      const DensityMatrix& rho);

// {F, G} = [F, G, S₂] = −i·Tr(ρ[∇F, ∇G]).
double bbmj_bracket(const Functional& f, const Functional& g, const DensityMatrix& rho);

// Cyclic Jacobi combination J = {{F,G},H} + {{H,F},G} + {{G,H},F} under the
// S-bracket {·,·} = [·,·,S].  Inner brackets become functionals by closure
// and are differentiated by finite differences.
double jacobi_defect(const Functional& f, const Functional& g, const Functional& h,
                     const EntropyGenerator& s, const DensityMatrix& rho);

// |{F_I, G_II}_S| for functionals that touch only opposite subsystems
// (no-signaling: must vanish for every generator).
double local_bracket_check(const BipartiteShape& shape, const Functional& f_first,
                           const Functional& g_second, const EntropyGenerator& s,
                           const DensityMatrix& rho);

// |[f_m, G, S]| — the moments are Casimirs of every moment-built generator.
double moment_casimir_check(int m, const Functional& g, const EntropyGenerator& s,
                            const DensityMatrix& rho);

} // namespace nambuq

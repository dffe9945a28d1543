#pragma once

#include "nambuq/matrixcore.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace nambuq {

// Smooth scalar map applied to the purity f₂ = Tr(ρ²), with derivatives.
struct SmoothFn {
    std::function<double(double)> g;
    std::function<double(double)> dg;
    std::function<double(double)> d2g;
};

SmoothFn half_square_fn();          // g(x) = x²/2
SmoothFn power_fn(double exponent); // g(x) = x^p

// How near-zero spectral weight is treated when a generator is evaluated on
// a raw matrix.  relative_cut = 0 keeps only the absolute 1e-12 support
// threshold.  The integrator evaluates stage states slightly off the
// positive cone (O(dt²) eigenvalue leakage on rank-deficient states), and
// λ^{α−1} with α < 2 amplifies that noise catastrophically, so it zeroes
// everything below 1e-4 of the top eigenvalue: on the invariant manifold
// this reproduces the exact support-restricted power, and near it the top
// spectral block is well separated.
struct SpectralPolicy {
    double relative_cut = 0.0;
};

inline constexpr SpectralPolicy kStrictSpectral{0.0};
inline constexpr SpectralPolicy kIntegratorSpectral{1e-4};

class EntropyGenerator;

struct SubsystemSelector {
    BipartiteShape shape;
    Subsystem keep;
};

// One factor of a composite generator.  An optional subsystem selector makes
// the part act on a reduced state (its gradient then lifts back with ⊗I).
struct CompositePart {
    std::shared_ptr<const EntropyGenerator> generator;
    double weight;
    std::optional<SubsystemSelector> subsystem;
};

// Entropy functional S[ρ] generating the dynamics, together with its
// operator-valued gradient δS/δρ.
//
//   quadratic           S₂ = ½ Tr(ρ²),               ∇ = ρ
//   renyi_homogeneous   (1−1/α)·T^u / r^{u−1},        T = Tr(ρ^α), r = Tr ρ,
//                                                     u = 1/(α−1)
//   renyi_pure          same with prefactor ½
//   smooth_f2           g(f₂),                        ∇ = 2 g′(f₂) ρ
//   composite           Π_k S_k^{p_k},                ∇ = Σ_k p_k (S/S_k) ∇S_k
//
// The gradient keeps the identity-proportional term coming from the trace
// denominator: it cancels inside every commutator but is part of the true
// functional derivative (finite differences see it).
class EntropyGenerator {
public:
    enum class Kind { quadratic, renyi_homogeneous, renyi_pure, smooth_f2, composite };

    static EntropyGenerator quadratic();
    static EntropyGenerator renyi_homogeneous(double alpha); // α > 0, α ≠ 1
    static EntropyGenerator renyi_pure(double alpha);        // α > 0, α ≠ 1
    static EntropyGenerator smooth_f2(SmoothFn g);
    // weights strictly positive, summing to 1 within 1e-12; parts must not
    // themselves be composite (deeper products flatten to one level)
    static EntropyGenerator composite(std::vector<CompositePart> parts);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const SmoothFn& smooth() const { return smooth_; }
    const std::vector<CompositePart>& parts() const { return parts_; }

    double value(const DensityMatrix& rho) const;
    HermitianMatrix gradient(const DensityMatrix& rho) const;

    // Relative 2-homogeneity defect |S(λρ) − λ²S(ρ)| / |λ²S(ρ)|.
    double check_homogeneity(const DensityMatrix& rho, double lambda) const;

    // Raw-matrix evaluation used by the integrator and by probe loops.
    double value_at(const Matrix& rho, const SpectralPolicy& policy) const;
    Matrix gradient_at(const Matrix& rho, const SpectralPolicy& policy) const;

private:
    explicit EntropyGenerator(Kind kind) : kind_(kind) {}

    Kind kind_;
    double alpha_ = 0.0;
    SmoothFn smooth_;
    std::vector<CompositePart> parts_;
};

} // namespace nambuq

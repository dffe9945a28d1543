#pragma once

#include "nambuq/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>

namespace nambuq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared by the matrix layer.
inline constexpr double kHermitianTol = 1e-12; // admissible asymmetry on construction
inline constexpr double kPsdTol = 1e-10;       // admissible negative eigenvalue
inline constexpr double kSupportTol = 1e-12;   // spectral support threshold for powers

// Square complex matrix equal to its own conjugate transpose.  Asymmetry up
// to 1e-12 elementwise is absorbed by symmetrization; more is a bug in the
// caller and is rejected.
class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Hermitian, positive semidefinite (eigenvalues ≥ −psd_tol), positive trace.
// States recorded after long integrations are validated with a looser
// psd_tol (1e-8) than freshly constructed ones (default 1e-10).
class DensityMatrix {
public:
    explicit DensityMatrix(HermitianMatrix h, double psd_tol = kPsdTol);
    explicit DensityMatrix(Matrix m, double psd_tol = kPsdTol);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    double trace() const { return trace_; }

private:
    Matrix m_;
    double trace_;
};

// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

struct BipartiteShape {
    int d1;
    int d2;

    BipartiteShape(int first, int second);
    int total() const { return d1 * d2; }
};

enum class Subsystem { first, second };

SpectralDecomposition spectral_decompose(const HermitianMatrix& m);

// ρ^s through the spectral decomposition.  Eigenvalues in [−1e-10, 0) are
// clamped to 0; values at or below the 1e-12 support threshold count as
// zero support, with 0^s := 0 for s > 0 and an error for s ≤ 0.
HermitianMatrix matrix_power(const DensityMatrix& rho, double s);

// f_k[ρ] = Tr(ρ^k) from the eigenvalues.
double moment(const DensityMatrix& rho, int k);

// Kronecker product on raw matrices; composite index i1·d2 + i2 with
// subsystem 1 outermost.
Matrix kron(const Matrix& a, const Matrix& b);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Partial trace on raw matrices (no positivity gate), same index convention.
Matrix partial_trace_matrix(const Matrix& rho, const BipartiteShape& shape,
                            Subsystem keep);

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteShape& shape,
                            Subsystem keep);

// Functionals are evaluated on raw Hermitian matrices so they stay defined
// on a neighborhood of a state (finite-difference probes leave the positive
// cone when the state is rank deficient).
using ScalarFunctional = std::function<double(const Matrix&)>;

// Central-difference gradient along the d² orthonormal Hermitian directions
// (diagonal units, symmetric pairs, antisymmetric-imaginary pairs): the
// unique Hermitian G with f(ρ + εΔ) − f(ρ) ≈ ε·Tr(ΔG).
HermitianMatrix functional_gradient_fd(const ScalarFunctional& f,
                                       const DensityMatrix& rho,
                                       double step = 1e-5);

// Same, at an arbitrary Hermitian base point.
HermitianMatrix functional_gradient_fd_at(const ScalarFunctional& f,
                                          const Matrix& base, double step = 1e-5);

// Haar-distributed unitary from QR of a Ginibre draw (R-diagonal phases
// folded in), consuming the given stream.
Matrix random_unitary(int dim, Rng& rng);

// Deterministic test fixture: VΛV† with simplex-sampled eigenvalues (exactly
// `rank` of them, each ≥ 1e-6; resampled on the rare draw below 1e-5) and a
// Haar unitary V.  Unit trace.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

// Deterministic fixture Hamiltonian: symmetrized Ginibre draw, rescaled to
// the requested spectral norm when norm_cap > 0.
HermitianMatrix random_hermitian(int dim, std::uint64_t seed, double norm_cap = 0.0);

} // namespace nambuq

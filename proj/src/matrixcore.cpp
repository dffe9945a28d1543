#include "nambuq/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nambuq {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve_hermitian(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    return es;
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    return es.eigenvalues()(0);
}

} // namespace

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw std::invalid_argument("hermitian matrix must be square and nonempty");
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol)
        throw std::domain_error("matrix is not Hermitian within tolerance");
    m_ = 0.5 * (m_ + m_.adjoint().eval());
}

DensityMatrix::DensityMatrix(HermitianMatrix h, double psd_tol)
    : m_(h.matrix()) {
    if (min_eigenvalue(m_) < -psd_tol)
        throw std::domain_error("density matrix has a negative eigenvalue beyond tolerance");
    trace_ = m_.trace().real();
    if (!(trace_ > 0.0))
        throw std::domain_error("density matrix must have positive trace");
}

DensityMatrix::DensityMatrix(Matrix m, double psd_tol)
    : DensityMatrix(HermitianMatrix(std::move(m)), psd_tol) {}

BipartiteShape::BipartiteShape(int first, int second) : d1(first), d2(second) {
    if (d1 < 1 || d2 < 1)
        throw std::invalid_argument("subsystem dimensions must be positive");
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& m) {
    auto es = solve_hermitian(m.matrix());
    return {es.eigenvalues(), es.eigenvectors()};
}

HermitianMatrix matrix_power(const DensityMatrix& rho, double s) {
    auto es = solve_hermitian(rho.matrix());
    RealVector lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) < -kPsdTol)
            throw std::domain_error("matrix_power: eigenvalue below positivity tolerance");
        if (lam(i) < 0.0) lam(i) = 0.0;
    }
    RealVector powered(lam.size());
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) <= kSupportTol) {
            if (s <= 0.0)
                throw std::domain_error("matrix_power: nonpositive power of a singular state");
            powered(i) = 0.0;
        } else {
            powered(i) = std::pow(lam(i), s);
        }
    }
    Matrix out = es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().adjoint();
    return HermitianMatrix(std::move(out));
}

double moment(const DensityMatrix& rho, int k) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    double f = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        f += std::pow(es.eigenvalues()(i), k);
    return f;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace_matrix(const Matrix& rho, const BipartiteShape& shape,
                            Subsystem keep) {
    const int d1 = shape.d1, d2 = shape.d2;
    if (rho.rows() != shape.total())
        throw std::invalid_argument("partial_trace: dimension does not match shape");
    if (keep == Subsystem::first) {
        Matrix out = Matrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j)
                for (int k = 0; k < d2; ++k)
                    out(i, j) += rho(i * d2 + k, j * d2 + k);
        return out;
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                out(i, j) += rho(k * d2 + i, k * d2 + j);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteShape& shape,
                            Subsystem keep) {
    return DensityMatrix(partial_trace_matrix(rho.matrix(), shape, keep));
}

HermitianMatrix functional_gradient_fd_at(const ScalarFunctional& f,
                                          const Matrix& base, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const int d = static_cast<int>(base.rows());
    Matrix grad = Matrix::Zero(d, d);
    const double inv2h = 1.0 / (2.0 * step);

    auto probe = [&](const Matrix& dir) {
        const double fp = f(base + step * dir);
        const double fm = f(base - step * dir);
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("functional returned a non-finite value while probing");
        return (fp - fm) * inv2h;
    };

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix dir = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        dir.setZero();
        dir(i, i) = 1.0;
        grad += probe(dir) * dir;
        for (int j = i + 1; j < d; ++j) {
            dir.setZero();
            dir(i, j) = inv_sqrt2;
            dir(j, i) = inv_sqrt2;
            grad += probe(dir) * dir;
            dir(i, j) = Complex(0.0, inv_sqrt2);
            dir(j, i) = Complex(0.0, -inv_sqrt2);
            grad += probe(dir) * dir;
        }
    }
    return HermitianMatrix(std::move(grad));
}

HermitianMatrix functional_gradient_fd(const ScalarFunctional& f,
                                       const DensityMatrix& rho, double step) {
    return functional_gradient_fd_at(f, rho.matrix(), step);
}

Matrix random_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("unitary dimension must be positive");
    Matrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            z(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        // fold R's diagonal phases into Q so the distribution is Haar
        q.col(j) *= (std::abs(rjj) > 0.0) ? rjj / std::abs(rjj) : Complex(1.0, 0.0);
    }
    return q;
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (rank < 1 || rank > dim)
        throw std::domain_error("rank must lie in [1, dim]");
    Rng rng(seed);
    std::vector<double> lam;
    if (rank == 1) {
        lam = {1.0};
    } else {
        do {
            lam = rng.simplex(rank);
        } while (*std::min_element(lam.begin(), lam.end()) < 1e-5);
    }
    RealVector full = RealVector::Zero(dim);
    for (int i = 0; i < rank; ++i) full(i) = lam[static_cast<std::size_t>(i)];
    const Matrix v = random_unitary(dim, rng);
    Matrix out = v * full.asDiagonal() * v.adjoint();
    return DensityMatrix(std::move(out));
}

HermitianMatrix random_hermitian(int dim, std::uint64_t seed, double norm_cap) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    Rng rng(seed);
    Matrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            z(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Matrix h = 0.5 * (z + z.adjoint().eval());
    if (norm_cap > 0.0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
        if (norm > 0.0) h *= norm_cap / norm;
    }
    return HermitianMatrix(std::move(h));
}

} // namespace nambuq

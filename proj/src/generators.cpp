#include "nambuq/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace nambuq {

namespace {

// Trace of the square of a Hermitian matrix.
double purity_of(const Matrix& rho) {
    return rho.squaredNorm();
}

struct Spectrum {
    RealVector lam; // ascending, clamped: entries below the cut are exact zeros
    Matrix vecs;
    double trace = 0.0; // raw trace, untouched by the clamp
    bool full_rank = true;

    double power_sum(double s) const {
        double t = 0.0;
        for (int i = 0; i < lam.size(); ++i)
            if (lam(i) > 0.0) t += std::pow(lam(i), s);
        return t;
    }

    Matrix power_matrix(double s) const {
        RealVector p = RealVector::Zero(lam.size());
        for (int i = 0; i < lam.size(); ++i)
            if (lam(i) > 0.0) p(i) = std::pow(lam(i), s);
        return vecs * p.asDiagonal() * vecs.adjoint();
    }
};

Spectrum analyze(const Matrix& rho, const SpectralPolicy& policy) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    Spectrum sp;
    sp.lam = es.eigenvalues();
    sp.vecs = es.eigenvectors();
    sp.trace = rho.trace().real();

    const double top = std::max(sp.lam(sp.lam.size() - 1), 0.0);
    const double cut = std::max(kSupportTol, policy.relative_cut * top);
    if (sp.lam(0) < -std::max(1e-8, cut))
        throw std::domain_error("state has negative spectral weight beyond tolerance");
    for (int i = 0; i < sp.lam.size(); ++i) {
        if (sp.lam(i) < cut) {
            sp.lam(i) = 0.0;
            sp.full_rank = false;
        }
    }
    return sp;
}

} // namespace

SmoothFn half_square_fn() {
    return {[](double x) { return 0.5 * x * x; },
            [](double x) { return x; },
            [](double) { return 1.0; }};
}

SmoothFn power_fn(double exponent) {
    return {[exponent](double x) { return std::pow(x, exponent); },
            [exponent](double x) { return exponent * std::pow(x, exponent - 1.0); },
            [exponent](double x) { return exponent * (exponent - 1.0) * std::pow(x, exponent - 2.0); }};
}

EntropyGenerator EntropyGenerator::quadratic() {
    return EntropyGenerator(Kind::quadratic);
}

EntropyGenerator EntropyGenerator::renyi_homogeneous(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw std::invalid_argument("renyi generator needs alpha > 0, alpha != 1");
    EntropyGenerator s(Kind::renyi_homogeneous);
    s.alpha_ = alpha;
    return s;
}

EntropyGenerator EntropyGenerator::renyi_pure(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw std::invalid_argument("renyi generator needs alpha > 0, alpha != 1");
    EntropyGenerator s(Kind::renyi_pure);
    s.alpha_ = alpha;
    return s;
}

EntropyGenerator EntropyGenerator::smooth_f2(SmoothFn g) {
    if (!g.g || !g.dg || !g.d2g)
        throw std::invalid_argument("smooth_f2 needs g with two derivatives");
    EntropyGenerator s(Kind::smooth_f2);
    s.smooth_ = std::move(g);
    return s;
}

EntropyGenerator EntropyGenerator::composite(std::vector<CompositePart> parts) {
    if (parts.empty()) throw std::invalid_argument("composite needs at least one part");
    double wsum = 0.0;
    for (const auto& p : parts) {
        if (!p.generator) throw std::invalid_argument("composite part without generator");
        if (p.generator->kind() == Kind::composite)
            throw std::invalid_argument("composite parts cannot nest (flatten the weights)");
        if (!(p.weight > 0.0))
            throw std::invalid_argument("composite weights must be strictly positive");
        wsum += p.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("composite weights must sum to 1");
    EntropyGenerator s(Kind::composite);
    s.parts_ = std::move(parts);
    return s;
}

double EntropyGenerator::value_at(const Matrix& rho, const SpectralPolicy& policy) const {
    switch (kind_) {
    case Kind::quadratic:
        return 0.5 * purity_of(rho);
    case Kind::renyi_homogeneous:
    case Kind::renyi_pure: {
        const double pf = (kind_ == Kind::renyi_pure) ? 0.5 : 1.0 - 1.0 / alpha_;
        if (alpha_ == 2.0) return pf * purity_of(rho); // u = 1: T/r⁰, exactly the purity
        const Spectrum sp = analyze(rho, policy);
        if (alpha_ < 1.0 && !sp.full_rank)
            throw std::domain_error("alpha < 1 requires a full-rank state");
        const double u = 1.0 / (alpha_ - 1.0);
        return pf * std::pow(sp.power_sum(alpha_), u) / std::pow(sp.trace, u - 1.0);
    }
    case Kind::smooth_f2:
        return smooth_.g(purity_of(rho));
    case Kind::composite: {
        double v = 1.0;
        for (const auto& p : parts_) {
            const double vk = p.subsystem
                ? p.generator->value_at(
                      partial_trace_matrix(rho, p.subsystem->shape, p.subsystem->keep), policy)
                : p.generator->value_at(rho, policy);
            if (!(vk > 0.0))
                throw std::domain_error("composite part value must be positive");
            v *= std::pow(vk, p.weight);
        }
        return v;
    }
    }
    throw std::logic_error("unreachable generator kind");
}

Matrix EntropyGenerator::gradient_at(const Matrix& rho, const SpectralPolicy& policy) const {
    const int d = static_cast<int>(rho.rows());
    switch (kind_) {
    case Kind::quadratic:
        return rho;
    case Kind::renyi_homogeneous:
    case Kind::renyi_pure: {
        const double pf = (kind_ == Kind::renyi_pure) ? 0.5 : 1.0 - 1.0 / alpha_;
        if (alpha_ == 2.0) return 2.0 * pf * rho; // both prefactors are ½ here
        const Spectrum sp = analyze(rho, policy);
        if (alpha_ < 1.0 && !sp.full_rank)
            throw std::domain_error("alpha < 1 requires a full-rank state");
        const double u = 1.0 / (alpha_ - 1.0);
        const double T = sp.power_sum(alpha_);
        const double r = sp.trace;
        const double lead = pf * alpha_ * u * std::pow(T, u - 1.0) / std::pow(r, u - 1.0);
        const double ident = pf * (u - 1.0) * std::pow(T, u) * std::pow(r, -u);
        Matrix out = lead * sp.power_matrix(alpha_ - 1.0);
        out -= ident * Matrix::Identity(d, d);
        return out;
    }
    case Kind::smooth_f2:
        return 2.0 * smooth_.dg(purity_of(rho)) * rho;
    case Kind::composite: {
        const double total = value_at(rho, policy);
        Matrix out = Matrix::Zero(d, d);
        for (const auto& p : parts_) {
            if (p.subsystem) {
                const Matrix red =
                    partial_trace_matrix(rho, p.subsystem->shape, p.subsystem->keep);
                const double vk = p.generator->value_at(red, policy);
                const Matrix gk = p.generator->gradient_at(red, policy);
                // gradient of S_k∘(partial trace) lifts with the identity on
                // the traced-out factor: Tr((X⊗I)Δ) = Tr(X·Tr₂Δ)
                const int d1 = p.subsystem->shape.d1, d2 = p.subsystem->shape.d2;
                const Matrix lifted = (p.subsystem->keep == Subsystem::first)
                    ? kron(gk, Matrix::Identity(d2, d2))
                    : kron(Matrix::Identity(d1, d1), gk);
                out += p.weight * (total / vk) * lifted;
            } else {
                const double vk = p.generator->value_at(rho, policy);
                out += p.weight * (total / vk) * p.generator->gradient_at(rho, policy);
            }
        }
        return out;
    }
    }
    throw std::logic_error("unreachable generator kind");
}

double EntropyGenerator::value(const DensityMatrix& rho) const {
    return value_at(rho.matrix(), kStrictSpectral);
}

HermitianMatrix EntropyGenerator::gradient(const DensityMatrix& rho) const {
    return HermitianMatrix(gradient_at(rho.matrix(), kStrictSpectral));
}

double EntropyGenerator::check_homogeneity(const DensityMatrix& rho, double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("homogeneity check needs lambda > 0");
    const double scaled = value_at(lambda * rho.matrix(), kStrictSpectral);
    const double base = lambda * lambda * value_at(rho.matrix(), kStrictSpectral);
    return std::abs(scaled - base) / std::abs(base);
}

} // namespace nambuq

#include "nambuq/brackets.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nambuq {

namespace {

constexpr double kImagGuard = 1e-8;
constexpr double kClosedFormTol = 1e-6;

// Well-conditioned full-rank probe for construction checks: a seeded random
// state pulled toward the maximally mixed one.
DensityMatrix default_probe(int dim) {
    const DensityMatrix r = random_density(dim, dim, 0x70b5u + static_cast<std::uint64_t>(dim));
    Matrix m = 0.7 * r.matrix() + 0.3 / dim * Matrix::Identity(dim, dim);
    return DensityMatrix(std::move(m));
}

Matrix int_power(const Matrix& m, int k) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

// −i·Tr([A,B]·C) for Hermitian A, B, C: the trace itself is purely
// imaginary, so the bracket value is its imaginary part and the real part
// is a consistency residue.
double bracket_of_gradients(const Matrix& a, const Matrix& b, const Matrix& c) {
    const Complex z = ((a * b - b * a) * c).trace();
    if (std::abs(z.real()) > kImagGuard)
        throw std::runtime_error("triple bracket lost reality (imaginary residue too large)");
    return z.imag();
}

} // namespace

Functional::Functional(Evaluator f, GradientFn grad, const DensityMatrix& probe,
                       double fd_step)
    : f_(std::move(f)), grad_(std::move(grad)), step_(fd_step) {
    if (!f_ || !grad_) throw std::invalid_argument("functional needs evaluator and gradient");
    const Matrix cf = grad_(probe.matrix());
    const Matrix fd = functional_gradient_fd_at(f_, probe.matrix(), step_).matrix();
    const double rel = (cf - fd).norm() / std::max(fd.norm(), 1.0);
    if (rel > kClosedFormTol)
        throw std::invalid_argument("closed-form gradient disagrees with finite differences");
}

Functional Functional::finite_difference(Evaluator f, double fd_step) {
    if (!f) throw std::invalid_argument("functional needs an evaluator");
    if (!(fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    Functional out;
    out.f_ = std::move(f);
    out.step_ = fd_step;
    return out;
}

Matrix Functional::grad(const Matrix& rho) const {
    if (grad_) return grad_(rho);
    return functional_gradient_fd_at(f_, rho, step_).matrix();
}

Functional linear_observable(const HermitianMatrix& a) {
    const Matrix op = a.matrix();
    return Functional(
        [op](const Matrix& r) { return (r * op).trace().real(); },
        [op](const Matrix&) { return op; },
        default_probe(a.dim()));
}

Functional moment_functional(int m, int dim) {
    if (m < 1) throw std::invalid_argument("moment order must be >= 1");
    return Functional(
        [m](const Matrix& r) { return int_power(r, m).trace().real(); },
        [m](const Matrix& r) -> Matrix { return static_cast<double>(m) * int_power(r, m - 1); },
        default_probe(dim));
}

Functional generator_functional(const EntropyGenerator& s, int dim) {
    return Functional(
        [s](const Matrix& r) { return s.value_at(r, kStrictSpectral); },
        [s](const Matrix& r) { return s.gradient_at(r, kStrictSpectral); },
        default_probe(dim));
}

Functional reduced_functional(Functional local, const BipartiteShape& shape,
                              Subsystem keep) {
    const int dother = (keep == Subsystem::first) ? shape.d2 : shape.d1;
    Functional inner = local;
    return Functional(
        [inner, shape, keep](const Matrix& r) {
            return inner.eval(partial_trace_matrix(r, shape, keep));
        },
        [inner, shape, keep, dother](const Matrix& r) {
            const Matrix g = inner.grad(partial_trace_matrix(r, shape, keep));
            return (keep == Subsystem::first)
                ? kron(g, Matrix::Identity(dother, dother))
                : kron(Matrix::Identity(dother, dother), g);
        },
        default_probe(shape.total()));
}

double triple_bracket(const Functional& f, const Functional& g, const Functional& h,
                      const DensityMatrix& rho) {
    const Matrix& r = rho.matrix();
    return bracket_of_gradients(f.grad(r), g.grad(r), h.grad(r));
}

double bbmj_bracket(const Functional& f, const Functional& g, const DensityMatrix& rho) {
    // S₂'s gradient is the state itself, so the third slot is ρ.
    const Matrix& r = rho.matrix();
    return bracket_of_gradients(f.grad(r), g.grad(r), r);
}

double jacobi_defect(const Functional& f, const Functional& g, const Functional& h,
                     const EntropyGenerator& s, const DensityMatrix& rho) {
    auto pair_bracket = [&s](const Functional& x, const Functional& y) {
        return Functional::finite_difference([x, y, s](const Matrix& r) {
            return bracket_of_gradients(x.grad(r), y.grad(r),
                                        s.gradient_at(r, kStrictSpectral));
        });
    };
    const Matrix& r = rho.matrix();
    const Matrix sg = s.gradient_at(r, kStrictSpectral);
    auto outer = [&](const Functional& inner, const Functional& third) {
        return bracket_of_gradients(inner.grad(r), third.grad(r), sg);
    };
    return outer(pair_bracket(f, g), h) + outer(pair_bracket(h, f), g) +
           outer(pair_bracket(g, h), f);
}

double local_bracket_check(const BipartiteShape& shape, const Functional& f_first,
                           const Functional& g_second, const EntropyGenerator& s,
                           const DensityMatrix& rho) {
    if (rho.dim() != shape.total())
        throw std::domain_error("state dimension does not match bipartite shape");
    const Functional lifted_f = reduced_functional(f_first, shape, Subsystem::first);
    const Functional lifted_g = reduced_functional(g_second, shape, Subsystem::second);
    const Functional sf = generator_functional(s, shape.total());
    return std::abs(triple_bracket(lifted_f, lifted_g, sf, rho));
}

double moment_casimir_check(int m, const Functional& g, const EntropyGenerator& s,
                            const DensityMatrix& rho) {
    const Functional fm = moment_functional(m, rho.dim());
    const Functional sf = generator_functional(s, rho.dim());
    return std::abs(triple_bracket(fm, g, sf, rho));
}

} // namespace nambuq

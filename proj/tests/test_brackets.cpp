#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambuq/brackets.hpp"

#include <cmath>
#include <stdexcept>

using namespace nambuq;

namespace {

Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
Matrix pauli_y() {
    return (Matrix(2, 2) << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0))
        .finished();
}

DensityMatrix interior(int dim, std::uint64_t seed) {
    const DensityMatrix r = random_density(dim, dim, seed);
    return DensityMatrix(0.8 * r.matrix() + (0.2 / dim) * Matrix::Identity(dim, dim));
}

} // namespace

TEST_CASE("closed-form gradients are validated at construction") {
    const DensityMatrix probe = interior(2, 1);
    const HermitianMatrix a = random_hermitian(2, 2, 1.0);
    const auto eval = [m = a.matrix()](const Matrix& rho) {
        return (rho * m).trace().real();
    };
    CHECK_NOTHROW(Functional(eval, [m = a.matrix()](const Matrix&) { return m; }, probe));
    // a wrong closed form must be caught by the finite-difference cross-check
    CHECK_THROWS_AS(Functional(eval, [](const Matrix& rho) { return Matrix(2.0 * rho); },
                               probe),
                    std::invalid_argument);
}

TEST_CASE("frozen qubit bracket value") {
    // F = Tr(rho sigma_x), G = Tr(rho sigma_y), H = half purity, rho = |0><0|:
    // -i Tr([sx, sy] rho) = 2 Tr(sz rho) = 2
    const DensityMatrix rho((Matrix(2, 2) << 1, 0, 0, 0).finished());
    const Functional f = linear_observable(HermitianMatrix(pauli_x()));
    const Functional g = linear_observable(HermitianMatrix(pauli_y()));
    const Functional h = generator_functional(EntropyGenerator::quadratic(), 2);
    CHECK(std::abs(triple_bracket(f, g, h, rho) - 2.0) <= 1e-9);
    CHECK(std::abs(bbmj_bracket(f, g, rho) - 2.0) <= 1e-12);
}

TEST_CASE("antisymmetry and repeated slots") {
    const DensityMatrix rho = interior(3, 3);
    const Functional f = linear_observable(random_hermitian(3, 4, 1.0));
    const Functional g = linear_observable(random_hermitian(3, 5, 1.0));
    const Functional h = linear_observable(random_hermitian(3, 6, 1.0));

    const double base = triple_bracket(f, g, h, rho);
    CHECK(std::abs(triple_bracket(g, f, h, rho) + base) <= 1e-10);
    CHECK(std::abs(triple_bracket(f, h, g, rho) + base) <= 1e-10);
    CHECK(std::abs(triple_bracket(h, g, f, rho) + base) <= 1e-10);
    CHECK(std::abs(triple_bracket(f, f, h, rho)) <= 1e-12);
    CHECK(std::abs(triple_bracket(f, g, g, rho)) <= 1e-12);
}

TEST_CASE("pair bracket two-path agreement") {
    const DensityMatrix rho = interior(3, 7);
    const HermitianMatrix a = random_hermitian(3, 8, 1.0);
    const HermitianMatrix b = random_hermitian(3, 9, 1.0);
    const double via_bracket =
        bbmj_bracket(linear_observable(a), linear_observable(b), rho);
    const double direct = 2.0 * (rho.matrix() * a.matrix() * b.matrix()).trace().imag();
    CHECK(std::abs(via_bracket - direct) <= 1e-12);
}

TEST_CASE("trace and moments are casimirs") {
    const DensityMatrix rho = interior(3, 10);
    const Functional g = linear_observable(random_hermitian(3, 11, 1.0));
    CHECK(std::abs(bbmj_bracket(moment_functional(1, 3), g, rho)) <= 1e-12);
    for (int m = 1; m <= 3; ++m) {
        CHECK(moment_casimir_check(m, g, EntropyGenerator::quadratic(), rho) <= 1e-10);
        CHECK(moment_casimir_check(m, g, EntropyGenerator::renyi_homogeneous(1.5), rho) <=
              1e-9);
    }
}

TEST_CASE("moment functional evaluates off the positive cone") {
    // repeated products, not spectral powers: must work on any Hermitian arg
    const Functional f2 = moment_functional(2, 2);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -0.2;
    CHECK(std::abs(f2.eval(m) - 0.29) <= 1e-14);
    CHECK_THROWS_AS(moment_functional(0, 2), std::invalid_argument);
}

TEST_CASE("reduced functionals act through the partial trace") {
    const BipartiteShape shape(2, 3);
    const HermitianMatrix a = random_hermitian(2, 12, 1.0);
    const Functional f = reduced_functional(linear_observable(a), shape, Subsystem::first);
    const DensityMatrix rho = interior(6, 13);
    const Matrix reduced = partial_trace_matrix(rho.matrix(), shape, Subsystem::first);
    CHECK(std::abs(f.eval(rho.matrix()) - (reduced * a.matrix()).trace().real()) <= 1e-13);
    // the lift: grad = A tensor I
    const Matrix lifted = f.grad(rho.matrix());
    CHECK((lifted - kron(a.matrix(), Matrix::Identity(3, 3))).cwiseAbs().maxCoeff() <=
          1e-12);
}

TEST_CASE("no-signaling single case") {
    const BipartiteShape shape(2, 2);
    const DensityMatrix rho = interior(4, 14);
    const Functional f = linear_observable(random_hermitian(2, 15, 1.0));
    const Functional g = moment_functional(2, 2);
    CHECK(local_bracket_check(shape, f, g, EntropyGenerator::renyi_homogeneous(1.5), rho) <=
          1e-8);
}

TEST_CASE("jacobi defect vanishes for the quadratic generator") {
    const DensityMatrix rho = interior(2, 16);
    const Functional f = linear_observable(random_hermitian(2, 17, 1.0));
    const Functional g = linear_observable(random_hermitian(2, 18, 1.0));
    const Functional h = linear_observable(random_hermitian(2, 19, 1.0));
    CHECK(std::abs(jacobi_defect(f, g, h, EntropyGenerator::quadratic(), rho)) <= 1e-5);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambuq/dynamics.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

using namespace nambuq;

namespace {

Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }
Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }

DensityMatrix plus_state() {
    return DensityMatrix((Matrix(2, 2) << 0.5, 0.5, 0.5, 0.5).finished());
}

DensityMatrix minus_state() {
    return DensityMatrix((Matrix(2, 2) << 0.5, -0.5, -0.5, 0.5).finished());
}

DensityMatrix interior(int dim, std::uint64_t seed) {
    const DensityMatrix r = random_density(dim, dim, seed);
    return DensityMatrix(0.8 * r.matrix() + (0.2 / dim) * Matrix::Identity(dim, dim));
}

std::shared_ptr<const EntropyGenerator> part_of(EntropyGenerator g) {
    return std::make_shared<const EntropyGenerator>(std::move(g));
}

EntropyGenerator sub_composite(const BipartiteShape& shape) {
    return EntropyGenerator::composite(
        {{part_of(EntropyGenerator::renyi_pure(1.5)), 0.5,
          SubsystemSelector{shape, Subsystem::first}},
         {part_of(EntropyGenerator::quadratic()), 0.5,
          SubsystemSelector{shape, Subsystem::second}}});
}

} // namespace

TEST_CASE("rhs closed forms") {
    const HermitianMatrix h = random_hermitian(3, 1, 1.0);
    const DensityMatrix rho = interior(3, 2);

    // quadratic generator: the linear von Neumann right-hand side
    const EvolutionSpec lin{h, EntropyGenerator::quadratic(), rho, 1.0};
    const Matrix expected =
        Complex(0, -1) * (h.matrix() * rho.matrix() - rho.matrix() * h.matrix());
    CHECK((rhs(rho, lin).matrix() - expected).cwiseAbs().maxCoeff() <= 1e-13);

    // maximally mixed: gradient proportional to I, motion stops
    const DensityMatrix mixed(Matrix(Matrix::Identity(3, 3) / 3.0));
    const EvolutionSpec spec{h, EntropyGenerator::renyi_homogeneous(1.5), mixed, 1.0};
    CHECK(rhs(mixed, spec).matrix().cwiseAbs().maxCoeff() <= 1e-13);

    // pure states: the homogeneous family rides the linear flow
    const DensityMatrix pure = random_density(3, 1, 3);
    const Matrix lin_rhs =
        Complex(0, -1) * (h.matrix() * pure.matrix() - pure.matrix() * h.matrix());
    for (double alpha : {1.3, 2.5}) {
        const EvolutionSpec s{h, EntropyGenerator::renyi_homogeneous(alpha), pure, 1.0};
        CHECK((rhs(pure, s).matrix() - lin_rhs).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("exact linear oracle on the qubit") {
    const HermitianMatrix sz((pauli_z()));
    const DensityMatrix plus = plus_state();

    CHECK(trace_distance(exact_linear(sz, plus, 0.0), plus) <= 1e-14);
    // phases e^{-i t} and e^{+i t}: relative phase pi at t = pi/2
    CHECK(trace_distance(exact_linear(sz, plus, M_PI / 2.0), minus_state()) <= 1e-12);
    // ... and a full period at t = pi (U = -I)
    CHECK(trace_distance(exact_linear(sz, plus, M_PI), plus) <= 1e-12);

    // stationary when [H, rho] = 0
    const DensityMatrix diag((Matrix(2, 2) << 0.7, 0, 0, 0.3).finished());
    CHECK(trace_distance(exact_linear(sz, diag, 2.7), diag) <= 1e-14);
}

TEST_CASE("spec validation") {
    const HermitianMatrix h(pauli_z());
    const DensityMatrix rho = plus_state();
    const EntropyGenerator q = EntropyGenerator::quadratic();

    CHECK_THROWS_AS(evolve({h, q, interior(3, 4), 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evolve({h, q, rho, 1.0, 2.0}), std::invalid_argument); // dt > t_final
    CHECK_THROWS_AS(evolve({h, q, rho, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evolve({h, q, rho, 1.0, -1e-3}), std::invalid_argument);
    CHECK_THROWS_AS(evolve({h, q, rho, 1.0, 1e-3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(evolve({h, q, rho, 1.0, 1e-3, 100, 0.0}), std::invalid_argument);

    const Trajectory still = evolve({h, q, rho, 0.0});
    CHECK(still.times.size() == 1);
    CHECK(still.times[0] == 0.0);
    CHECK(trace_distance(still.states[0], rho) <= 1e-14);
}

TEST_CASE("linear case matches the oracle at every recorded time") {
    const HermitianMatrix sz((pauli_z()));
    const EvolutionSpec spec{sz, EntropyGenerator::quadratic(), plus_state(),
                             10.0, 1e-3, 100, 1e-6};
    const Trajectory traj = evolve(spec);
    CHECK(traj.times.size() == 101);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        worst = std::max(worst, trace_distance(traj.states[i],
                                               exact_linear(sz, spec.rho0, traj.times[i])));
    CHECK(worst <= 1e-8);

    // times strictly increasing from 0
    CHECK(traj.times.front() == 0.0);
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        CHECK(traj.times[i] > traj.times[i - 1]);
}

TEST_CASE("nonlinear flow conserves spectrum, moments, generator, energy") {
    const HermitianMatrix h = random_hermitian(3, 5, 1.5);
    const EvolutionSpec spec{h, EntropyGenerator::renyi_homogeneous(1.5),
                             interior(3, 6), 5.0, 1e-3, 200, 1e-4};
    const Trajectory traj = evolve(spec);

    const auto& d0 = traj.diagnostics.front();
    for (const auto& d : traj.diagnostics) {
        CHECK((d.eigenvalues - d0.eigenvalues).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(d.eigenvalues.minCoeff() >= -1e-8);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(std::abs(d.moments[k] - d0.moments[k]) / std::abs(d0.moments[k]) <=
                  1e-7);
        CHECK(std::abs(d.entropy_value - d0.entropy_value) /
                  std::abs(d0.entropy_value) <=
              1e-7);
        CHECK(std::abs(d.energy - d0.energy) <= 1e-8);
    }
}

TEST_CASE("drift alarm fires when conservation genuinely breaks") {
    // a generator acting through reductions moves the global moments under an
    // interacting Hamiltonian, so a tight alarm must trip
    const BipartiteShape shape(2, 2);
    const Matrix coupled = 0.7 * kron(pauli_z(), Matrix::Identity(2, 2)) +
                           0.5 * kron(Matrix::Identity(2, 2), pauli_x()) +
                           0.8 * kron(pauli_z(), pauli_z());
    const EvolutionSpec spec{HermitianMatrix(coupled), sub_composite(shape),
                             interior(4, 7), 2.0, 1e-3, 50, 1e-6};
    CHECK_THROWS_AS(evolve(spec), DriftAlarm);

    try {
        evolve(spec);
    } catch (const DriftAlarm& alarm) {
        CHECK(alarm.time > 0.0);
        CHECK(alarm.moment_index >= 1);
        CHECK(alarm.moment_index <= 5);
        CHECK(alarm.drift > 1e-6);
        CHECK(std::string(alarm.what()).find("drift") != std::string::npos);
    }
}

TEST_CASE("gradient domain errors carry the failing time") {
    // alpha < 1 on a rank-deficient state dies at the first right-hand side
    const EvolutionSpec spec{HermitianMatrix(pauli_x()),
                             EntropyGenerator::renyi_homogeneous(0.5),
                             random_density(2, 1, 8), 1.0, 1e-3, 100, 1e-6};
    CHECK_THROWS_AS(evolve(spec), std::domain_error);
    try {
        evolve(spec);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("t=") != std::string::npos);
    }
}

TEST_CASE("time rescaling for f2 generators") {
    const HermitianMatrix sx((pauli_x()));
    const DensityMatrix rho((Matrix(2, 2) << 0.7, 0, 0, 0.3).finished());

    // g(x) = x^2/2: C0 = 2 g'(f2) = 2 f2 = 1.16
    CHECK(time_rescaling_check(EntropyGenerator::smooth_f2(half_square_fn()), sx, rho,
                               2.0, 1e-3) <= 1e-6);

    // g(x) = x/2 is the quadratic generator itself: C0 = 1
    const SmoothFn half{[](double x) { return 0.5 * x; }, [](double) { return 0.5; },
                        [](double) { return 0.0; }};
    CHECK(time_rescaling_check(EntropyGenerator::smooth_f2(half), sx, rho, 2.0, 1e-3) <=
          1e-8);

    // maximally mixed: both sides constant
    const DensityMatrix mixed(Matrix(Matrix::Identity(2, 2) * 0.5));
    CHECK(time_rescaling_check(EntropyGenerator::smooth_f2(half_square_fn()), sx, mixed,
                               2.0, 1e-3) <= 1e-12);

    CHECK_THROWS_AS(time_rescaling_check(EntropyGenerator::quadratic(), sx, rho, 2.0,
                                         1e-3),
                    std::invalid_argument);
}

TEST_CASE("pure-state speed factor of the pure-normalized family") {
    // scalar factor alpha/(2(alpha-1)): frozen points
    const auto factor = [](double a) { return a / (2.0 * (a - 1.0)); };
    CHECK(std::abs(factor(1.1) - 5.5) <= 1e-12);
    CHECK(std::abs(factor(1.01) - 50.5) <= 1e-12);

    const HermitianMatrix h = random_hermitian(2, 9, 1.0);
    const DensityMatrix pure = random_density(2, 1, 10);
    const double alpha = 1.5;
    const EvolutionSpec spec{h, EntropyGenerator::renyi_pure(alpha), pure,
                             2.0, 1e-3, 100, 1e-4};
    const Trajectory traj = evolve(spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        worst = std::max(worst,
                         trace_distance(traj.states[i],
                                        exact_linear(h, pure, factor(alpha) * traj.times[i])));
    CHECK(worst <= 1e-6);
}

TEST_CASE("observable averages") {
    const HermitianMatrix sz((pauli_z()));
    const EvolutionSpec spec{sz, EntropyGenerator::quadratic(), plus_state(),
                             5.0, 1e-3, 100, 1e-6};
    const Trajectory traj = evolve(spec);

    for (double v : observable_average(traj, HermitianMatrix(Matrix(Matrix::Identity(2, 2)))))
        CHECK(std::abs(v - 1.0) <= 1e-12);

    const auto energy = observable_average(traj, sz);
    for (double v : energy) CHECK(std::abs(v - energy.front()) <= 1e-8);

    const auto sx_avg = observable_average(traj, HermitianMatrix(pauli_x()));
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix oracle = exact_linear(sz, spec.rho0, traj.times[i]);
        const double expected = (oracle.matrix() * pauli_x()).trace().real();
        CHECK(std::abs(sx_avg[i] - expected) <= 1e-8);
    }
}

TEST_CASE("sub-entropy conservation through an interacting coupling") {
    const BipartiteShape shape(2, 2);
    const Matrix coupled = 0.7 * kron(pauli_z(), Matrix::Identity(2, 2)) +
                           0.5 * kron(Matrix::Identity(2, 2), pauli_x()) +
                           0.45 * kron(pauli_z(), pauli_z());
    const DensityMatrix rho0(0.5 * random_density(4, 4, 11).matrix() +
                             0.125 * Matrix::Identity(4, 4));
    const EvolutionSpec spec{HermitianMatrix(coupled), sub_composite(shape), rho0,
                             2.0, 1e-3, 100, 1e9};
    const auto drifts = subentropy_conservation_check(spec, shape);
    CHECK(drifts.size() == 2);
    for (double d : drifts) CHECK(d <= 1e-6);

    // decoupled Hamiltonian, product state: trivially conserved
    const Matrix free_h = 0.7 * kron(pauli_z(), Matrix::Identity(2, 2)) +
                          0.5 * kron(Matrix::Identity(2, 2), pauli_x());
    const DensityMatrix product =
        tensor_product(random_density(2, 2, 12), random_density(2, 2, 13));
    const EvolutionSpec free_spec{HermitianMatrix(free_h), sub_composite(shape), product,
                                  2.0, 1e-3, 100, 1e9};
    for (double d : subentropy_conservation_check(free_spec, shape)) CHECK(d <= 1e-8);

    // a generator without subsystem parts is rejected
    const EvolutionSpec bad{HermitianMatrix(free_h), EntropyGenerator::quadratic(), rho0,
                            1.0, 1e-3, 100, 1e9};
    CHECK_THROWS_AS(subentropy_conservation_check(bad, shape), std::invalid_argument);
}

#include "nambuq/dynamics.hpp"

#include <cmath>
#include <string>

namespace nambuq {

namespace {

void validate(const EvolutionSpec& spec) {
    if (spec.hamiltonian.dim() != spec.rho0.dim())
        throw std::invalid_argument("hamiltonian and state dimensions differ");
    if (!(spec.t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
    if (!(spec.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (spec.t_final > 0.0 && spec.dt > spec.t_final)
        throw std::invalid_argument("dt must not exceed t_final");
    if (spec.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    if (!(spec.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

Matrix rhs_matrix(const Matrix& rho, const Matrix& h, const EntropyGenerator& s,
                  const SpectralPolicy& policy) {
    const Matrix g = s.gradient_at(rho, policy);
    Matrix k = Complex(0.0, -1.0) * (h * g - g * h);
    k = 0.5 * (k + k.adjoint().eval()); // kill roundoff asymmetry at every stage
    return k;
}

StepDiagnostics diagnose(double t, const Matrix& rho, const Matrix& h,
                         const EntropyGenerator& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    StepDiagnostics d;
    d.time = t;
    d.eigenvalues = es.eigenvalues();
    for (int k = 1; k <= 5; ++k) {
        double f = 0.0;
        for (int i = 0; i < d.eigenvalues.size(); ++i)
            f += std::pow(d.eigenvalues(i), k);
        d.moments[static_cast<std::size_t>(k - 1)] = f;
    }
    d.entropy_value = s.value_at(rho, kIntegratorSpectral);
    d.energy = (rho * h).trace().real();
    return d;
}

} // namespace

DriftAlarm::DriftAlarm(double t, int k, double rel_drift)
    : std::runtime_error("moment f" + std::to_string(k) + " drifted by " +
                         std::to_string(rel_drift) + " at t=" + std::to_string(t)),
      time(t), moment_index(k), drift(rel_drift) {}

HermitianMatrix rhs(const DensityMatrix& rho, const EvolutionSpec& spec) {
    if (spec.hamiltonian.dim() != rho.dim())
        throw std::invalid_argument("hamiltonian and state dimensions differ");
    return HermitianMatrix(
        rhs_matrix(rho.matrix(), spec.hamiltonian.matrix(), spec.generator,
                   kIntegratorSpectral));
}

Trajectory evolve(const EvolutionSpec& spec) {
    validate(spec);
    const Matrix h = spec.hamiltonian.matrix();
    const EntropyGenerator& s = spec.generator;
    const long n_steps = std::lround(spec.t_final / spec.dt);

    Trajectory traj;
    Matrix rho = spec.rho0.matrix();

    auto record = [&](long step) {
        const double t = static_cast<double>(step) * spec.dt;
        // long integrations are allowed to wander 1e-8 off the cone
        traj.states.emplace_back(rho, 1e-8);
        traj.times.push_back(t);
        traj.diagnostics.push_back(diagnose(t, rho, h, s));
    };

    try {
        record(0);
    } catch (const std::domain_error& e) {
        throw std::domain_error("t=0: " + std::string(e.what()));
    }
    const std::array<double, 5> f0 = traj.diagnostics.front().moments;

    for (long step = 1; step <= n_steps; ++step) {
        const double t_prev = static_cast<double>(step - 1) * spec.dt;
        try {
            const double hh = spec.dt;
            const Matrix k1 = rhs_matrix(rho, h, s, kIntegratorSpectral);
            const Matrix k2 = rhs_matrix(rho + 0.5 * hh * k1, h, s, kIntegratorSpectral);
            const Matrix k3 = rhs_matrix(rho + 0.5 * hh * k2, h, s, kIntegratorSpectral);
            const Matrix k4 = rhs_matrix(rho + hh * k3, h, s, kIntegratorSpectral);
            rho += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            rho = 0.5 * (rho + rho.adjoint().eval());
        } catch (const std::domain_error& e) {
            throw std::domain_error("t=" + std::to_string(t_prev) + ": " + e.what());
        }

        if (step % spec.record_every == 0 || step == n_steps) {
            try {
                record(step);
            } catch (const std::domain_error& e) {
                throw std::domain_error("t=" + std::to_string(static_cast<double>(step) * spec.dt) +
                                        ": " + e.what());
            }
            const auto& d = traj.diagnostics.back();
            for (int k = 0; k < 5; ++k) {
                const double rel =
                    std::abs(d.moments[static_cast<std::size_t>(k)] -
                             f0[static_cast<std::size_t>(k)]) /
                    std::abs(f0[static_cast<std::size_t>(k)]);
                if (rel > spec.tolerance) throw DriftAlarm(d.time, k + 1, rel);
            }
        }
    }
    return traj;
}

DensityMatrix exact_linear(const HermitianMatrix& hamiltonian,
                           const DensityMatrix& rho0, double t) {
    const SpectralDecomposition sd = spectral_decompose(hamiltonian);
    const int d = hamiltonian.dim();
    Eigen::VectorXcd phases(d);
    for (int i = 0; i < d; ++i)
        phases(i) = std::exp(Complex(0.0, -sd.eigenvalues(i) * t));
    const Matrix u = sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
    return DensityMatrix(Matrix(u * rho0.matrix() * u.adjoint()));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double time_rescaling_check(const EntropyGenerator& g, const HermitianMatrix& hamiltonian,
                            const DensityMatrix& rho0, double t_final, double dt) {
    if (g.kind() != EntropyGenerator::Kind::smooth_f2)
        throw std::invalid_argument("time rescaling is defined for smooth-of-purity generators");
    const double f2 = rho0.matrix().squaredNorm();
    const double c0 = 2.0 * g.smooth().dg(f2);

    const long n = std::lround(t_final / dt);
    EvolutionSpec spec{hamiltonian, g, rho0, t_final, dt,
                       static_cast<int>(std::max(1L, n / 100)), 1e-6};
    const Trajectory traj = evolve(spec);

    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix oracle = exact_linear(hamiltonian, rho0, c0 * traj.times[i]);
        worst = std::max(worst, trace_distance(traj.states[i], oracle));
    }
    return worst;
}

std::vector<double> observable_average(const Trajectory& traj, const HermitianMatrix& obs) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& state : traj.states) {
        if (state.dim() != obs.dim())
            throw std::invalid_argument("observable dimension does not match state");
        out.push_back((state.matrix() * obs.matrix()).trace().real() / state.trace());
    }
    return out;
}

std::vector<double> subentropy_conservation_check(const EvolutionSpec& spec,
                                                  const BipartiteShape& shape) {
    if (spec.generator.kind() != EntropyGenerator::Kind::composite)
        throw std::invalid_argument("sub-entropy check needs a composite generator");
    if (shape.total() != spec.rho0.dim())
        throw std::domain_error("bipartite shape does not match state dimension");
    const auto& parts = spec.generator.parts();
    for (const auto& p : parts) {
        if (!p.subsystem)
            throw std::invalid_argument("sub-entropy check needs subsystem-wrapped parts");
        if (p.subsystem->shape.d1 != shape.d1 || p.subsystem->shape.d2 != shape.d2)
            throw std::domain_error("part shape disagrees with the given bipartite shape");
    }

    const Trajectory traj = evolve(spec);
    std::vector<double> base, drift(parts.size(), 0.0);
    base.reserve(parts.size());
    for (const auto& p : parts)
        base.push_back(p.generator->value_at(
            partial_trace_matrix(traj.states.front().matrix(), shape, p.subsystem->keep),
            kIntegratorSpectral));
    for (const auto& state : traj.states) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const double v = parts[k].generator->value_at(
                partial_trace_matrix(state.matrix(), shape, parts[k].subsystem->keep),
                kIntegratorSpectral);
            drift[k] = std::max(drift[k], std::abs(v - base[k]));
        }
    }
    return drift;
}

} // namespace nambuq

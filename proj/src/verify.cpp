#include "nambuq/verify.hpp"

#include "nambuq/brackets.hpp"
#include "nambuq/config.hpp"
#include "nambuq/dynamics.hpp"
#include "nambuq/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

namespace nambuq {

namespace {

struct Table {
    std::ostream& os;
    bool ok = true;

    void print(const std::string& name, double value, const std::string& bound,
               const std::string& status) {
        os << "  " << std::left << std::setw(52) << name << std::right
           << std::scientific << std::setprecision(3) << value << "  " << std::setw(12)
           << bound << "  " << status << '\n';
    }
    void row(const std::string& name, double value, double tol) {
        const bool pass = value <= tol;
        ok = ok && pass;
        print(name, value, "<= " + format_g12(tol), pass ? "PASS" : "FAIL");
    }
    void row_at_least(const std::string& name, double value, double floor) {
        const bool pass = value >= floor;
        ok = ok && pass;
        print(name, value, ">= " + format_g12(floor), pass ? "PASS" : "FAIL");
    }
    void report(const std::string& name, double value) {
        print(name, value, "(open)", "REPORT");
    }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t t) {
    return seed * 1000003ULL + salt * 99991ULL + t * 7919ULL + 1ULL;
}

// Full-rank state pulled toward maximal mixture, so every generator variant
// (including alpha < 1) is well conditioned on it.
DensityMatrix interior_state(int dim, std::uint64_t seed, double pull = 0.3) {
    const DensityMatrix r = random_density(dim, dim, seed);
    Matrix m = (1.0 - pull) * r.matrix() +
               (pull / dim) * Matrix::Identity(dim, dim);
    return DensityMatrix(std::move(m));
}

struct NamedGen {
    std::string name;
    EntropyGenerator gen;
};

// The moment-built variants: exactly the ones whose gradients commute with
// the state, so moments and spectra are conserved under their flows.
std::vector<NamedGen> moment_variants() {
    std::vector<CompositePart> plain;
    plain.push_back({std::make_shared<EntropyGenerator>(
                         EntropyGenerator::renyi_homogeneous(1.5)),
                     0.4, std::nullopt});
    plain.push_back({std::make_shared<EntropyGenerator>(EntropyGenerator::quadratic()),
                     0.6, std::nullopt});
    std::vector<NamedGen> v;
    v.push_back({"quadratic", EntropyGenerator::quadratic()});
    v.push_back({"renyi_hom(1.5)", EntropyGenerator::renyi_homogeneous(1.5)});
    v.push_back({"renyi_hom(2.0)", EntropyGenerator::renyi_homogeneous(2.0)});
    v.push_back({"renyi_hom(2.5)", EntropyGenerator::renyi_homogeneous(2.5)});
    v.push_back({"renyi_pure(1.5)", EntropyGenerator::renyi_pure(1.5)});
    v.push_back({"smooth_f2(x^2/2)", EntropyGenerator::smooth_f2(half_square_fn())});
    v.push_back({"composite(0.4 renyi_hom(1.5), 0.6 quadratic)",
                 EntropyGenerator::composite(std::move(plain))});
    return v;
}

EntropyGenerator subsystem_composite(const BipartiteShape& shape) {
    std::vector<CompositePart> parts;
    parts.push_back({std::make_shared<EntropyGenerator>(EntropyGenerator::renyi_pure(1.5)),
                     0.5, SubsystemSelector{shape, Subsystem::first}});
    parts.push_back({std::make_shared<EntropyGenerator>(EntropyGenerator::quadratic()),
                     0.5, SubsystemSelector{shape, Subsystem::second}});
    return EntropyGenerator::composite(std::move(parts));
}

// --- entropy ---------------------------------------------------------------

bool suite_entropy(const VerifyOptions& opt, std::ostream& os) {
    Table t{os};
    const int trials = opt.trials > 0 ? opt.trials : 1000;
    const LogBase bits(2.0);

    const std::vector<double> alphas{0.5, 1.5, 2.0, 3.0};
    const GainScanReport scan = gain_vanishing_scan(trials, alphas, opt.seed);
    t.row("info gain vanishes identically at alpha=2", scan.max_abs_gain[2], 1e-12);
    t.row_at_least("info gain nonvanishing at alpha=0.5", scan.max_abs_gain[0], 1e-3);
    t.row_at_least("info gain nonvanishing at alpha=1.5", scan.max_abs_gain[1], 1e-3);
    t.row_at_least("info gain nonvanishing at alpha=3.0", scan.max_abs_gain[3], 1e-3);

    double worst = 0.0;
    for (int n = 2; n <= 64; ++n) {
        const ProbDist u(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
        for (double a : {0.5, 2.0, 3.0})
            worst = std::max(worst, std::abs(renyi(u, a, bits) - hartley(n, bits)));
    }
    t.row("uniform-distribution renyi equals log2(N), N<=64", worst, 1e-10);

    Rng rng(mix_seed(opt.seed, 2, 0));
    double limit_dev = 0.0, monot = 0.0, duality = 0.0, basechg = 0.0;
    const std::vector<double> grid{0.25, 0.5, 0.75, 1.25, 1.5, 2.0, 3.0, 4.0};
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 7);
        std::vector<double> p = rng.simplex(n);
        for (auto& v : p) v = 0.9 * v + 0.1 / n; // keep entries away from 0
        const ProbDist dist(p);
        const double sh = shannon(dist, bits);
        limit_dev = std::max(limit_dev, std::abs(renyi(dist, 1.0 + 1e-4, bits) - sh));
        limit_dev = std::max(limit_dev, std::abs(renyi(dist, 1.0 - 1e-4, bits) - sh));
        for (std::size_t k = 0; k + 1 < grid.size(); ++k)
            monot = std::max(monot, renyi(dist, grid[k + 1], bits) - renyi(dist, grid[k], bits));
        const ConditionalUpdate u{ProbDist(rng.simplex(n)), ProbDist(rng.simplex(n))};
        duality = std::max(duality,
                           std::abs(info_gain(u, 1.0, bits).value + info_loss(u, 1.0, bits)));
        basechg = std::max(basechg, std::abs(renyi(dist, 1.7, bits) * 0.5 -
                                             renyi(dist, 1.7, LogBase(4.0))));
    }
    t.row("renyi near alpha=1 stays within 1e-3 of shannon", limit_dev, 1e-3);
    t.row("renyi nonincreasing in alpha (worst increase)", monot, 1e-12);
    t.row("gain(alpha=1) = -loss(alpha=1)", duality, 1e-12);
    t.row("base-change consistency (bits vs base 4)", basechg, 1e-12);
    return t.ok;
}

// --- brackets ---------------------------------------------------------------

bool suite_brackets(const VerifyOptions& opt, std::ostream& os) {
    Table t{os};
    const int trials = opt.trials > 0 ? opt.trials : 50;

    double antisym = 0.0, twopath = 0.0, tracecas = 0.0;
    for (int i = 0; i < trials; ++i) {
        const int dim = 3;
        const DensityMatrix rho = interior_state(dim, mix_seed(opt.seed, 10, i));
        const HermitianMatrix a = random_hermitian(dim, mix_seed(opt.seed, 11, i), 1.0);
        const HermitianMatrix b = random_hermitian(dim, mix_seed(opt.seed, 12, i), 1.0);
        const HermitianMatrix c = random_hermitian(dim, mix_seed(opt.seed, 13, i), 1.0);
        const Functional f = linear_observable(a), g = linear_observable(b),
                         h = linear_observable(c);

        const double base = triple_bracket(f, g, h, rho);
        antisym = std::max(antisym, std::abs(triple_bracket(g, f, h, rho) + base));
        antisym = std::max(antisym, std::abs(triple_bracket(f, h, g, rho) + base));
        antisym = std::max(antisym, std::abs(triple_bracket(h, g, f, rho) + base));

        // independent arithmetic path: −i·Tr(ρ[A,B]) = 2·Im Tr(ρAB)
        const double direct =
            2.0 * (rho.matrix() * a.matrix() * b.matrix()).trace().imag();
        twopath = std::max(twopath, std::abs(bbmj_bracket(f, g, rho) - direct));

        tracecas = std::max(tracecas,
                            std::abs(bbmj_bracket(moment_functional(1, dim), g, rho)));
    }
    t.row("triple bracket antisymmetric under transpositions", antisym, 1e-10);
    t.row("pair bracket matches -i*Tr(rho[A,B]) two-path", twopath, 1e-12);
    t.row("trace functional is a casimir of the pair bracket", tracecas, 1e-10);

    const auto variants = moment_variants();
    double casimir = 0.0;
    for (int i = 0; i < trials; ++i) {
        const int dim = (i % 2 == 0) ? 4 : 6;
        const DensityMatrix rho = interior_state(dim, mix_seed(opt.seed, 14, i));
        const NamedGen& ng = variants[static_cast<std::size_t>(i) % variants.size()];
        const Functional g =
            (i % 2 == 0)
                ? linear_observable(random_hermitian(dim, mix_seed(opt.seed, 15, i), 1.0))
                : moment_functional(3, dim);
        for (int m = 1; m <= 3; ++m)
            casimir = std::max(casimir, moment_casimir_check(m, g, ng.gen, rho));
    }
    t.row("moments f1..f3 are casimirs for every variant", casimir, 1e-8);
    return t.ok;
}

// --- nosignal ---------------------------------------------------------------

bool suite_nosignal(const VerifyOptions& opt, std::ostream& os) {
    Table t{os};
    const int trials = opt.trials > 0 ? opt.trials : 100;

    double worst22 = 0.0, worst23 = 0.0;
    for (int i = 0; i < trials; ++i) {
        const BipartiteShape shape = (i % 2 == 0) ? BipartiteShape(2, 2)
                                                  : BipartiteShape(2, 3);
        const DensityMatrix rho = interior_state(shape.total(), mix_seed(opt.seed, 20, i));

        const Functional f_first =
            (i % 4 < 2)
                ? linear_observable(random_hermitian(shape.d1, mix_seed(opt.seed, 21, i), 1.0))
                : moment_functional(2, shape.d1);
        const Functional g_second =
            (i % 4 == 0 || i % 4 == 3)
                ? linear_observable(random_hermitian(shape.d2, mix_seed(opt.seed, 22, i), 1.0))
                : moment_functional(2, shape.d2);

        std::vector<NamedGen> gens = moment_variants();
        gens.push_back({"composite on subsystems", subsystem_composite(shape)});
        const EntropyGenerator& s = gens[static_cast<std::size_t>(i) % gens.size()].gen;

        const double v = local_bracket_check(shape, f_first, g_second, s, rho);
        ((i % 2 == 0) ? worst22 : worst23) = std::max((i % 2 == 0) ? worst22 : worst23, v);
    }
    t.row("subsystem-local bracket vanishes, 2x2 states", worst22, 1e-8);
    t.row("subsystem-local bracket vanishes, 2x3 states", worst23, 1e-8);
    return t.ok;
}

// --- jacobi -----------------------------------------------------------------

bool suite_jacobi(const VerifyOptions& opt, std::ostream& os) {
    Table t{os};
    const int trials = opt.trials > 0 ? opt.trials : 20;

    double s2 = 0.0, smooth = 0.0, rh15 = 0.0, rh25 = 0.0;
    const EntropyGenerator gen_s2 = EntropyGenerator::quadratic();
    const EntropyGenerator gen_smooth = EntropyGenerator::smooth_f2(half_square_fn());
    const EntropyGenerator gen_rh15 = EntropyGenerator::renyi_homogeneous(1.5);
    const EntropyGenerator gen_rh25 = EntropyGenerator::renyi_homogeneous(2.5);
    for (int i = 0; i < trials; ++i) {
        const int dim = (i % 2 == 0) ? 2 : 3;
        const DensityMatrix rho = interior_state(dim, mix_seed(opt.seed, 30, i));
        const Functional f =
            linear_observable(random_hermitian(dim, mix_seed(opt.seed, 31, i), 1.0));
        const Functional g =
            linear_observable(random_hermitian(dim, mix_seed(opt.seed, 32, i), 1.0));
        const Functional h =
            linear_observable(random_hermitian(dim, mix_seed(opt.seed, 33, i), 1.0));
        s2 = std::max(s2, std::abs(jacobi_defect(f, g, h, gen_s2, rho)));
        smooth = std::max(smooth, std::abs(jacobi_defect(f, g, h, gen_smooth, rho)));
        rh15 = std::max(rh15, std::abs(jacobi_defect(f, g, h, gen_rh15, rho)));
        rh25 = std::max(rh25, std::abs(jacobi_defect(f, g, h, gen_rh25, rho)));
    }
    t.row("jacobi defect vanishes for quadratic generator", s2, 1e-5);
    t.row("jacobi defect vanishes for smooth_f2 generator", smooth, 1e-5);
    t.report("jacobi defect, renyi_hom(1.5) (open question)", rh15);
    t.report("jacobi defect, renyi_hom(2.5) (open question)", rh25);
    return t.ok;
}

// --- conservation -----------------------------------------------------------

bool suite_conservation(const VerifyOptions& opt, std::ostream& os) {
    Table t{os};
    const int trials = opt.trials > 0 ? opt.trials : 50;
    const auto variants = moment_variants();

    double fdrift = 0.0, eigdrift = 0.0, negdip = 0.0, sdrift = 0.0;
    for (int i = 0; i < trials; ++i) {
        const int dim = 2 + (i % 3);
        const DensityMatrix rho0 = interior_state(dim, mix_seed(opt.seed, 40, i));
        const HermitianMatrix h = random_hermitian(dim, mix_seed(opt.seed, 41, i), 1.5);
        const NamedGen& ng = variants[static_cast<std::size_t>(i) % variants.size()];
        const EvolutionSpec spec{h, ng.gen, rho0, 2.0, 1e-3, 100, 1e-4};
        const Trajectory traj = evolve(spec);

        const auto& d0 = traj.diagnostics.front();
        for (const auto& d : traj.diagnostics) {
            for (int k = 0; k < 5; ++k)
                fdrift = std::max(fdrift,
                                  std::abs(d.moments[static_cast<std::size_t>(k)] -
                                           d0.moments[static_cast<std::size_t>(k)]) /
                                      std::abs(d0.moments[static_cast<std::size_t>(k)]));
            eigdrift = std::max(
                eigdrift, (d.eigenvalues - d0.eigenvalues).cwiseAbs().maxCoeff());
            negdip = std::max(negdip, -d.eigenvalues.minCoeff());
            sdrift = std::max(sdrift, std::abs(d.entropy_value - d0.entropy_value) /
                                          std::abs(d0.entropy_value));
        }
    }
    t.row("moments f1..f5 conserved (relative drift)", fdrift, 1e-7);
    t.row("spectrum conserved along the flow", eigdrift, 1e-6);
    t.row("positivity preserved (worst negative dip)", std::max(negdip, 0.0), 1e-8);
    t.row("generator value conserved (relative drift)", sdrift, 1e-7);

    // sub-entropies stay put even with interaction switched on; the moment
    // alarm is irrelevant here (the global moments genuinely move when the
    // generator acts through reductions), so it is parked out of the way
    const BipartiteShape shape(2, 2);
    double subdrift = 0.0, ratiodrift = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Matrix sz = (Matrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished();
        const Matrix sx = (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
        const Matrix id = Matrix::Identity(2, 2);
        const Matrix h1 = random_hermitian(2, mix_seed(opt.seed, 42, i), 0.8).matrix();
        const Matrix h2 = random_hermitian(2, mix_seed(opt.seed, 43, i), 0.6).matrix();
        const Matrix coupled = kron(h1, id) + kron(id, h2) + 0.45 * kron(sz, sz);
        const DensityMatrix rho0 = interior_state(4, mix_seed(opt.seed, 44, i), 0.5);
        const EntropyGenerator gen = subsystem_composite(shape);

        EvolutionSpec spec{HermitianMatrix(coupled), gen, rho0, 2.0, 1e-3, 100, 1e9};
        const auto drifts = subentropy_conservation_check(spec, shape);
        for (double v : drifts) subdrift = std::max(subdrift, v);

        // noninteracting Hamiltonian: the ratio S/S_k is an integral too
        EvolutionSpec free_spec{HermitianMatrix(Matrix(kron(h1, id) + kron(id, h2))),
                                gen, rho0, 2.0, 1e-3, 100, 1e9};
        const Trajectory traj = evolve(free_spec);
        const auto& parts = gen.parts();
        const double s0 = gen.value(traj.states.front());
        const double p0 = parts[0].generator->value(
            partial_trace(traj.states.front(), shape, Subsystem::first));
        for (const auto& st : traj.states) {
            const double ratio = gen.value(st) /
                                 parts[0].generator->value(
                                     partial_trace(st, shape, Subsystem::first));
            ratiodrift = std::max(ratiodrift, std::abs(ratio - s0 / p0) / std::abs(s0 / p0));
        }
    }
    t.row("sub-entropies conserved under interacting coupling", subdrift, 1e-6);
    t.row("entropy ratio S/S_k conserved (noninteracting)", ratiodrift, 1e-7);
    return t.ok;
}

} // namespace

bool run_verify_suite(const std::string& suite, const VerifyOptions& opt,
                      std::ostream& os) {
    bool ok = true;
    bool matched = false;
    auto run = [&](const std::string& name, bool (*fn)(const VerifyOptions&, std::ostream&)) {
        if (suite == name || suite == "all") {
            matched = true;
            os << name << ":\n";
            ok = fn(opt, os) && ok;
        }
    };
    run("entropy", suite_entropy);
    run("brackets", suite_brackets);
    run("nosignal", suite_nosignal);
    run("jacobi", suite_jacobi);
    run("conservation", suite_conservation);
    if (!matched)
        throw std::invalid_argument(
            "unknown suite '" + suite +
            "' (expected brackets|conservation|nosignal|jacobi|entropy|all)");
    os << (ok ? "all assertable properties passed\n"
              : "FAILURES present (see table)\n");
    return ok;
}

} // namespace nambuq

#include "nambuq/infotheory.hpp"

#include "nambuq/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nambuq {

namespace {

constexpr double kSumTol = 1e-12;

void check_alpha_common(double alpha) {
    if (alpha < 0.0)
        throw std::domain_error("alpha < 0 is excluded (postulates fail there)");
    if (alpha == 1.0)
        throw std::domain_error("alpha = 1 is the Shannon case; call shannon() instead");
}

// Σ p_k^α with the 0^α := 0 convention for α > 0 (and 0^0 := 0 so that
// empty events never count as support).
double power_sum(const ProbDist& p, double alpha) {
    double s = 0.0;
    for (double v : p.probs())
        if (v > 0.0) s += std::pow(v, alpha);
    return s;
}

} // namespace

LogBase::LogBase(double base) : a(base) {
    if (!(base > 1.0)) throw std::invalid_argument("log base must exceed 1");
}

ProbDist::ProbDist(std::vector<double> probs, Mode mode)
    : probs_(std::move(probs)), sum_(0.0), mode_(mode) {
    if (probs_.empty()) throw std::invalid_argument("empty probability list");
    for (double v : probs_) {
        if (!(v >= 0.0)) throw std::invalid_argument("negative probability entry");
        sum_ += v;
    }
    if (mode_ == Mode::strict) {
        if (std::abs(sum_ - 1.0) > kSumTol)
            throw std::invalid_argument("probabilities must sum to 1 in strict mode");
    } else {
        if (sum_ > 1.0 + kSumTol)
            throw std::invalid_argument("incomplete distribution must have sum <= 1");
        if (!(sum_ > 0.0))
            throw std::invalid_argument("distribution must have positive total weight");
    }
}

ConditionalUpdate::ConditionalUpdate(ProbDist prior_in, ProbDist posterior_in)
    : prior(std::move(prior_in)), posterior(std::move(posterior_in)) {
    if (prior.size() != posterior.size())
        throw std::invalid_argument("prior and posterior must have equal length");
    for (int k = 0; k < prior.size(); ++k)
        if (posterior[k] > 0.0 && prior[k] == 0.0)
            throw std::domain_error("posterior support exceeds prior support");
}

double hartley(long long n, LogBase base) {
    if (n < 1) throw std::domain_error("hartley needs at least one outcome");
    return std::log(static_cast<double>(n)) / std::log(base.a);
}

double shannon(const ProbDist& p, LogBase base) {
    double h = 0.0;
    for (double v : p.probs())
        if (v > 0.0) h -= v * std::log(v);
    return h / std::log(base.a);
}

double renyi(const ProbDist& p, double alpha, LogBase base) {
    check_alpha_common(alpha);
    return std::log(power_sum(p, alpha)) / ((1.0 - alpha) * std::log(base.a));
}

double renyi_star(const ProbDist& p, double alpha) {
    check_alpha_common(alpha);
    return std::pow(power_sum(p, alpha), 1.0 / (1.0 - alpha));
}

double daroczy(const ProbDist& p, double alpha) {
    if (alpha <= 0.0) throw std::domain_error("daroczy needs alpha > 0");
    if (alpha == 1.0)
        throw std::domain_error("alpha = 1 is only a limit of daroczy, not a value");
    return (power_sum(p, alpha) - 1.0) / (std::pow(2.0, 1.0 - alpha) - 1.0);
}

GainResult info_gain(const ConditionalUpdate& u, double alpha, LogBase base) {
    if (alpha < 0.0)
        throw std::domain_error("alpha < 0 is excluded (postulates fail there)");
    const bool warn = alpha > 2.0;
    const double ln_a = std::log(base.a);

    if (alpha == 1.0) {
        double s = 0.0;
        for (int k = 0; k < u.prior.size(); ++k) {
            const double q = u.posterior[k];
            if (q > 0.0) s += q * std::log(q / u.prior[k]);
        }
        return {-s / ln_a, warn};
    }

    double s = 0.0;
    for (int k = 0; k < u.prior.size(); ++k) {
        const double p = u.prior[k];
        const double q = u.posterior[k];
        if (q > 0.0) {
            s += std::pow(p, 2.0 - alpha) * std::pow(q, alpha - 1.0);
        } else if (p > 0.0 && alpha < 1.0) {
            // 1/q^{1−α} diverges for an impossible outcome that was possible.
            return {std::numeric_limits<double>::infinity(), warn};
        }
    }
    return {std::log(s) / ((1.0 - alpha) * ln_a), warn};
}

double info_loss(const ConditionalUpdate& u, double alpha, LogBase base) {
    if (alpha < 0.0)
        throw std::domain_error("alpha < 0 is excluded (postulates fail there)");
    const double ln_a = std::log(base.a);

    if (alpha == 1.0) {
        double s = 0.0;
        for (int k = 0; k < u.prior.size(); ++k) {
            const double q = u.posterior[k];
            if (q > 0.0) s += q * std::log(q / u.prior[k]);
        }
        return s / ln_a;
    }

    double s = 0.0;
    for (int k = 0; k < u.prior.size(); ++k) {
        const double p = u.prior[k];
        const double q = u.posterior[k];
        if (q > 0.0) s += std::pow(q, alpha) * std::pow(p, 1.0 - alpha);
    }
    return std::log(s) / ((alpha - 1.0) * ln_a);
}

GainScanReport gain_vanishing_scan(int trials, const std::vector<double>& alphas,
                                   std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("scan needs at least one trial");
    Rng rng(seed);
    GainScanReport report;
    report.alphas = alphas;
    report.max_abs_gain.assign(alphas.size(), 0.0);
    report.trials = trials;
    const LogBase bits(2.0);

    for (int t = 0; t < trials; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 7); // 2..8 outcomes
        ConditionalUpdate u{ProbDist(rng.simplex(n)), ProbDist(rng.simplex(n))};
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            const double g = std::abs(info_gain(u, alphas[i], bits).value);
            if (g > report.max_abs_gain[i]) report.max_abs_gain[i] = g;
        }
    }
    return report;
}

} // namespace nambuq

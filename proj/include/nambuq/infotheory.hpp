#pragma once

#include <cstdint>
#include <vector>

namespace nambuq {

// Unit of information: a = 2 bits, a = e nats.
struct LogBase {
    double a;
    explicit LogBase(double base);
};

// Discrete probability distribution.  Strict mode requires the entries to
// sum to 1 (within 1e-12); incomplete mode only requires the sum ≤ 1.
// Entries are stored exactly as given, never renormalized.
class ProbDist {
public:
    enum class Mode { strict, incomplete };

    explicit ProbDist(std::vector<double> probs, Mode mode = Mode::strict);

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](int k) const { return probs_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& probs() const { return probs_; }
    double sum() const { return sum_; }
    Mode mode() const { return mode_; }

private:
    std::vector<double> probs_;
    double sum_;
    Mode mode_;
};

// Prior/posterior pair describing a conditional update of the same event
// list.  Wherever the posterior is supported the prior must be too.
struct ConditionalUpdate {
    ProbDist prior;
    ProbDist posterior;

    ConditionalUpdate(ProbDist prior_in, ProbDist posterior_in);
};

// log_a(n): information in a uniform choice among n outcomes.
double hartley(long long n, LogBase base);

// Σ p_k log_a(1/p_k), with 0·log(1/0) := 0.
double shannon(const ProbDist& p, LogBase base);

// (1/(1−α)) log_a(Σ p_k^α).  α ≥ 0, α ≠ 1 (α = 1 is shannon's job; α < 0
// rejected outright).  Zero entries contribute nothing for α > 0.
double renyi(const ProbDist& p, double alpha, LogBase base);

// (Σ p_k^α)^{1/(1−α)}; base-independent exponential of `renyi`.
double renyi_star(const ProbDist& p, double alpha);

// (2^{1−α} − 1)^{−1} (Σ p_k^α − 1).  α > 0, α ≠ 1.
double daroczy(const ProbDist& p, double alpha);

// info_gain carries a flag marking the α > 2 regime, where the measure is
// still computable but behaves pathologically.
struct GainResult {
    double value;
    bool alpha_above_two;
};

// Gain of information in a conditional update:
//   α ≠ 1: (1/(1−α)) log_a(Σ p_k^{2−α} / q_k^{1−α})   (q = posterior)
//   α = 1: −Σ q_k log_a(q_k / p_k)  (sign kept as is; this is minus the KL
//          divergence and is ≤ 0)
// Vanishes identically in the update only at α = 2.  A zero posterior entry
// with supported prior makes the α < 1 sum diverge; +inf is returned there.
GainResult info_gain(const ConditionalUpdate& u, double alpha, LogBase base);

// Loss of information: (1/(α−1)) log_a(Σ q_k^α p_k^{1−α}) for α ≠ 1, the
// α-divergence of posterior from prior; α = 1 gives Σ q_k log_a(q_k/p_k)
// (Kullback-Leibler), so gain(u,1) = −loss(u,1).
double info_loss(const ConditionalUpdate& u, double alpha, LogBase base);

// Randomized demonstration that the gain vanishes identically only at
// α = 2: draws `trials` (prior, posterior) pairs from the flat simplex and
// records the largest |gain| seen per α.
struct GainScanReport {
    std::vector<double> alphas;
    std::vector<double> max_abs_gain; // aligned with alphas
    int trials;
};

GainScanReport gain_vanishing_scan(int trials, const std::vector<double>& alphas,
                                   std::uint64_t seed);

} // namespace nambuq

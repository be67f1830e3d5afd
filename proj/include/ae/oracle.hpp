#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ae/confint.hpp"

namespace ae {

/// The estimation target: an amplitude a in [0, 1] and its angle
/// theta = arcsin(sqrt(a)), so that a = sin^2(theta).
struct AmplitudeProblem {
    double a = 0.0;
    double theta = 0.0;

    static AmplitudeProblem from_amplitude(double a);
};

/// Deterministic random stream. The generator is a std::mt19937_64 (fully
/// specified by the standard) and every distribution on top of it is
/// implemented here, so a seed reproduces the exact sample sequence on any
/// platform. A RandomSource is single-owner; concurrent work should use
/// derive() to obtain independent child streams.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Exact Binomial(n, p) draw: CDF inversion for n <= 64, Bernoulli
    /// counting above.
    std::uint64_t binomial(std::uint64_t n, double p);

    /// Independent child stream for run number `index` (SplitMix64 mix of
    /// the master seed and the index).
    RandomSource derive(std::uint64_t index) const;

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// P[measuring 1] after k Grover iterations: sin^2((2k+1) theta). The angle
/// product is carried in extended precision so the value stays within ~1e-13
/// of the true one even for k ~ 1e6.
double grover_success_prob(const AmplitudeProblem& problem, std::int64_t k);

/// n_shots Bernoulli trials at the Grover-amplified success probability.
BinomialTally sample_grover(const AmplitudeProblem& problem, std::int64_t k,
                            std::uint64_t n_shots, RandomSource& rng);

/// Probability of the raw phase-estimation ancilla outcome y in {0..2^m - 1}
/// for a register prepared at angle theta_a. The state splits evenly between
/// the two eigenphases +-theta_a, so each outcome carries an equal-weight
/// mixture of the two phase kernels; the resulting vector sums to one and is
/// mirror symmetric (P[y] = P[M - y]).
double qpe_probability(double theta_a, int m, std::uint64_t y);

/// Full outcome distribution over y in {0..2^m - 1}. Entries sum to 1 within
/// 1e-10; an on-grid theta_a = pi y*/M puts all mass on {y*, M - y*}.
std::vector<double> qpe_distribution(double theta_a, int m);

/// Multinomial draw of n_shots samples from qpe_distribution.
std::vector<std::uint64_t> sample_qpe(double theta_a, int m, std::uint64_t n_shots,
                                      RandomSource& rng);

/// Period-1 circular distance folded into [0, 1/2].
double circular_distance_period1(double x, double y);

/// sin^2(M pi d) / (M sin(pi d))^2 with the d -> 0 limit handled explicitly
/// (returns 1 when |sin(pi d)| < 1e-15).
double qpe_kernel(double delta, double m_states);

}  // namespace ae

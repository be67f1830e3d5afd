#include "ae/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ae {

namespace {
constexpr double kPi = std::numbers::pi;
}

AmplitudeProblem AmplitudeProblem::from_amplitude(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("amplitude must lie in [0, 1]");
    return {a, std::asin(std::sqrt(a))};
}

std::uint64_t RandomSource::binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    // keep the CDF walk near the bulk and away from (1-p)^n underflow
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    if (n <= 64) {
        const double u = next_unit();
        double pmf = std::pow(1.0 - p, static_cast<double>(n));
        double cdf = pmf;
        const double odds = p / (1.0 - p);
        std::uint64_t x = 0;
        while (u >= cdf && x < n) {
            pmf *= static_cast<double>(n - x) / static_cast<double>(x + 1) * odds;
            cdf += pmf;
            ++x;
        }
        return x;
    }
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (bernoulli(p)) ++ones;
    return ones;
}

RandomSource RandomSource::derive(std::uint64_t index) const {
    // SplitMix64 finalizer over (seed, index); children are decorrelated from
    // the parent stream and from each other.
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return RandomSource(z);
}

double grover_success_prob(const AmplitudeProblem& problem, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("Grover power must be nonnegative");
    const long double angle =
        (2.0L * static_cast<long double>(k) + 1.0L) * static_cast<long double>(problem.theta);
    const long double s = std::sin(angle);
    return std::clamp(static_cast<double>(s * s), 0.0, 1.0);
}

BinomialTally sample_grover(const AmplitudeProblem& problem, std::int64_t k,
                            std::uint64_t n_shots, RandomSource& rng) {
    if (n_shots == 0) throw std::invalid_argument("n_shots must be positive");
    return {n_shots, rng.binomial(n_shots, grover_success_prob(problem, k))};
}

double circular_distance_period1(double x, double y) {
    double d = std::fabs(x - y);
    d -= std::floor(d);
    return d > 0.5 ? 1.0 - d : d;
}

double qpe_kernel(double delta, double m_states) {
    const double s = std::sin(kPi * delta);
    if (std::fabs(s) < 1e-15) return 1.0;
    const double num = std::sin(m_states * kPi * delta);
    return num * num / (m_states * m_states * s * s);
}

namespace {

void check_qpe_args(double theta_a, int m) {
    if (m < 1 || m > 30) throw std::invalid_argument("ancilla count m must lie in [1, 30]");
    if (!(theta_a >= 0.0 && theta_a <= kPi / 2 + 1e-12))
        throw std::invalid_argument("theta_a must lie in [0, pi/2]");
}

}  // namespace

double qpe_probability(double theta_a, int m, std::uint64_t y) {
    check_qpe_args(theta_a, m);
    const double m_states = std::ldexp(1.0, m);
    if (y >= static_cast<std::uint64_t>(m_states))
        throw std::invalid_argument("outcome index out of range");
    const double f = theta_a / kPi;
    const double g = static_cast<double>(y) / m_states;
    // equal-weight mixture of the +theta_a and -theta_a eigenphase kernels
    return 0.5 * (qpe_kernel(circular_distance_period1(f, g), m_states) +
                  qpe_kernel(circular_distance_period1(f, 1.0 - g), m_states));
}

std::vector<double> qpe_distribution(double theta_a, int m) {
    check_qpe_args(theta_a, m);
    const std::size_t size = std::size_t{1} << m;
    std::vector<double> probs(size);
    for (std::size_t y = 0; y < size; ++y) probs[y] = qpe_probability(theta_a, m, y);
    return probs;
}

std::vector<std::uint64_t> sample_qpe(double theta_a, int m, std::uint64_t n_shots,
                                      RandomSource& rng) {
    if (n_shots == 0) throw std::invalid_argument("n_shots must be positive");
    const std::vector<double> probs = qpe_distribution(theta_a, m);
    std::vector<double> cdf(probs.size());
    double run = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        run += probs[i];
        cdf[i] = run;
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
        const double u = rng.next_unit();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            std::min(static_cast<std::size_t>(it - cdf.begin()), probs.size() - 1);
        ++counts[idx];
    }
    return counts;
}

}  // namespace ae

#include "ae/iqae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ae {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_config(const IqaeConfig& config) {
    if (!(config.epsilon > 0.0 && config.epsilon < std::numbers::pi / 8.0))
        throw std::invalid_argument("epsilon must lie in (0, pi/8)");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    if (config.n_shots == 0) throw std::invalid_argument("n_shots must be positive");
    if (!(config.min_ratio > 1.0)) throw std::invalid_argument("min_ratio must exceed 1");
}

}  // namespace

NextPower find_next_k(std::int64_t k_cur, const AngleInterval& interval, bool up_cur,
                      double min_ratio) {
    if (!(min_ratio > 1.0)) throw std::invalid_argument("min_ratio must exceed 1");
    if (!(interval.lo >= 0.0 && interval.lo <= interval.hi && interval.hi <= kHalfPi + 1e-12))
        throw std::invalid_argument("interval must satisfy 0 <= lo <= hi <= pi/2");
    const long double lo = interval.lo;
    const long double hi = interval.hi;
    const long double width = hi - lo;
    if (!(width > 0.0L)) return {k_cur, up_cur};  // degenerate interval: no unique largest K

    const std::int64_t k_max = static_cast<std::int64_t>(std::floor(kPiL / width));
    const std::int64_t big_k_cur = 4 * k_cur + 2;
    const long double smallest = static_cast<long double>(min_ratio) *
                                 static_cast<long double>(big_k_cur);
    std::int64_t big_k = k_max - (k_max - 2) % 4;  // largest candidate of the form 4k + 2
    while (static_cast<long double>(big_k) >= smallest) {
        const long double scaled_lo = std::fmod(static_cast<long double>(big_k) * lo, kTwoPiL);
        const long double scaled_hi = std::fmod(static_cast<long double>(big_k) * hi, kTwoPiL);
        if (scaled_hi <= kPiL && scaled_lo <= kPiL) return {(big_k - 2) / 4, true};
        if (scaled_hi >= kPiL && scaled_lo >= kPiL) return {(big_k - 2) / 4, false};
        big_k -= 4;
    }
    return {k_cur, up_cur};
}

AngleInterval invert_to_scaled_angle(const Interval01& a_interval, bool upper_half_plane) {
    const double lo = std::clamp(a_interval.lo, 0.0, 1.0);
    const double hi = std::clamp(a_interval.hi, 0.0, 1.0);
    if (lo > hi) throw std::invalid_argument("interval must satisfy lo <= hi");
    const double angle_lo = std::acos(1.0 - 2.0 * lo);  // increasing in a
    const double angle_hi = std::acos(1.0 - 2.0 * hi);
    if (upper_half_plane) return {angle_lo, angle_hi};
    return {2.0 * std::numbers::pi - angle_hi, 2.0 * std::numbers::pi - angle_lo};
}

AngleInterval update_theta_interval(const AngleInterval& current, std::int64_t big_k,
                                    const AngleInterval& scaled) {
    if (big_k < 2 || (big_k - 2) % 4 != 0)
        throw std::invalid_argument("K must be of the form 4k + 2");
    const long double k_l = static_cast<long double>(big_k);
    const long double turns_lo = std::floor(k_l * static_cast<long double>(current.lo) / kTwoPiL);
    const long double turns_hi = std::floor(k_l * static_cast<long double>(current.hi) / kTwoPiL);
    const double lo =
        static_cast<double>((kTwoPiL * turns_lo + static_cast<long double>(scaled.lo)) / k_l);
    const double hi =
        static_cast<double>((kTwoPiL * turns_hi + static_cast<long double>(scaled.hi)) / k_l);
    return {lo, hi};
}

int max_rounds(double epsilon, double min_ratio) {
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 8.0))
        throw std::invalid_argument("epsilon must lie in (0, pi/8)");
    if (!(min_ratio > 1.0)) throw std::invalid_argument("min_ratio must exceed 1");
    const long double r = min_ratio;
    const long double value =
        std::log(r * kPiL / (8.0L * static_cast<long double>(epsilon))) / std::log(r);
    // tolerate one-ulp overshoot when the log is an exact integer
    return std::max(1, static_cast<int>(std::ceil(value - 1e-9L)));
}

namespace {

long double log_scaling_factor(double epsilon, double alpha) {
    const long double inner = (2.0L / static_cast<long double>(alpha)) *
                              (std::log(3.0L * kPiL / (20.0L * static_cast<long double>(epsilon))) /
                               std::log(3.0L));
    return std::log(inner);
}

}  // namespace

std::uint64_t n_max(double epsilon, double alpha) {
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 8.0))
        throw std::invalid_argument("epsilon must lie in (0, pi/8)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const long double lead = 12.0L / std::pow(std::sin(kPiL / 30.0L), 4.0L);
    return static_cast<std::uint64_t>(std::ceil(lead * log_scaling_factor(epsilon, alpha)));
}

double oracle_call_bound(double epsilon, double alpha) {
    if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 8.0))
        throw std::invalid_argument("epsilon must lie in (0, pi/8)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    return static_cast<double>(1.15e6L / static_cast<long double>(epsilon) *
                               log_scaling_factor(epsilon, alpha));
}

double theoretical_scaling(double epsilon, double alpha) {
    return static_cast<double>(log_scaling_factor(epsilon, alpha) /
                               static_cast<long double>(epsilon));
}

double overhead_statistic(const EstimationResult& result, double epsilon, double alpha) {
    return static_cast<double>(result.n_oracle) / theoretical_scaling(epsilon, alpha);
}

EstimationResult run_iqae(const IqaeConfig& config, const AmplitudeProblem& problem,
                          RandomSource& rng, const GroverSampler& sampler) {
    check_config(config);
    const int rounds_bound = max_rounds(config.epsilon, config.min_ratio);
    const double alpha_round = config.alpha / static_cast<double>(rounds_bound);
    const std::uint64_t shot_cap = n_max(config.epsilon, config.alpha);

    EstimationResult result;
    result.seed = rng.seed();
    if (config.n_shots > shot_cap)
        result.warnings.push_back(
            "n_shots exceeds N_max(epsilon, alpha); round and iteration bounds are only "
            "guaranteed for n_shots <= N_max");
    const std::uint64_t iteration_cap =
        static_cast<std::uint64_t>(rounds_bound) *
            ((shot_cap + config.n_shots - 1) / config.n_shots) +
        100;

    AngleInterval theta{0.0, kHalfPi};
    std::int64_t k = 0;
    bool up = true;
    BinomialTally round_tally;

    while (theta.width() > 2.0 * config.epsilon) {
        const NextPower next = find_next_k(k, theta, up, config.min_ratio);
        if (result.trace.empty() || next.k != k) {
            round_tally = {};
            ++result.n_rounds;
        }
        k = next.k;
        up = next.upper_half_plane;

        const BinomialTally draw = sampler
                                       ? sampler(problem, k, config.n_shots, rng)
                                       : sample_grover(problem, k, config.n_shots, rng);
        round_tally.shots += draw.shots;
        round_tally.ones += draw.ones;
        result.n_oracle += draw.shots * static_cast<std::uint64_t>(k);
        result.n_state_preps += draw.shots;

        const Interval01 a_ci = config.ci_method == CiMethod::chernoff
                                    ? chernoff_interval(round_tally, alpha_round)
                                    : clopper_pearson_interval(round_tally, alpha_round);
        const std::int64_t big_k = 4 * k + 2;
        const AngleInterval scaled = invert_to_scaled_angle(a_ci, up);
        AngleInterval updated = update_theta_interval(theta, big_k, scaled);
        updated.lo = std::clamp(updated.lo, 0.0, kHalfPi);
        updated.hi = std::clamp(updated.hi, updated.lo, kHalfPi);
        if (config.strict_nesting) {
            if (updated.lo < theta.lo - 1e-15 || updated.hi > theta.hi + 1e-15)
                ++result.non_nesting_events;
            updated.lo = std::max(updated.lo, theta.lo);
            updated.hi = std::max(std::min(updated.hi, theta.hi), updated.lo);
        }
        theta = updated;

        result.trace.push_back({k, big_k, up, round_tally, a_ci, theta});
        if (result.trace.size() > iteration_cap)
            throw std::runtime_error(
                "iqae: iteration count exceeded rounds x N_max/n_shots; this violates the "
                "termination guarantee and indicates an implementation defect");
    }

    result.n_iterations = result.trace.size();
    result.theta_interval = theta;
    const double sin_lo = std::sin(theta.lo);
    const double sin_hi = std::sin(theta.hi);
    result.a_interval = {sin_lo * sin_lo, sin_hi * sin_hi};
    result.estimate = result.a_interval.midpoint();
    return result;
}

}  // namespace ae

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ae/confint.hpp"
#include "ae/oracle.hpp"

namespace ae {

/// Confidence interval [lo, hi] for an angle, in radians. The theta_a
/// interval lives in [0, pi/2]; scaled variants live in [0, 2 pi].
struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class CiMethod { chernoff, clopper_pearson };

struct IqaeConfig {
    double epsilon = 1e-3;     ///< target half-width on a; must satisfy 0 < epsilon < pi/8
    double alpha = 0.05;       ///< total failure probability, in (0, 1)
    std::uint64_t n_shots = 100;
    CiMethod ci_method = CiMethod::clopper_pearson;
    double min_ratio = 2.0;    ///< minimum growth factor r for K, r > 1
    std::uint64_t seed = 0;
    /// When set, each updated theta interval is intersected with the previous
    /// one and non-nesting updates are counted (diagnostic mode; the plain
    /// algorithm applies the update formula literally).
    bool strict_nesting = false;
};

/// One iteration of the main loop. The tally is the merged tally of the
/// round the iteration belongs to, so tally.shots is a multiple of n_shots.
struct IterationRecord {
    std::int64_t k = 0;
    std::int64_t big_k = 2;         ///< K = 4k + 2
    bool upper_half_plane = true;
    BinomialTally tally;
    Interval01 a_interval;          ///< per-round confidence interval on a_i
    AngleInterval theta_interval;   ///< theta_a interval after the update
};

struct EstimationResult {
    Interval01 a_interval;
    double estimate = 0.0;          ///< midpoint of a_interval
    AngleInterval theta_interval;
    std::uint64_t n_oracle = 0;     ///< total Grover applications, sum of shots * k
    std::uint64_t n_state_preps = 0;///< total state preparations (= total shots)
    std::uint64_t n_rounds = 0;     ///< number of distinct k values used
    std::uint64_t n_iterations = 0;
    std::vector<IterationRecord> trace;
    std::uint64_t seed = 0;
    std::uint64_t non_nesting_events = 0;
    std::vector<std::string> warnings;
};

struct NextPower {
    std::int64_t k = 0;
    bool upper_half_plane = true;
};

/// Search for the next Grover power. Returns the largest k with K = 4k + 2,
/// min_ratio * K_cur <= K <= floor(pi / width), such that [K lo, K hi] taken
/// mod 2 pi lies entirely in [0, pi] (upper half-plane) or [pi, 2 pi] (lower
/// half-plane); candidates are scanned downward in steps of 4. Falls back to
/// (k_cur, up_cur) when no candidate exists. An endpoint landing exactly on
/// pi satisfies both half-plane tests and the upper branch wins.
NextPower find_next_k(std::int64_t k_cur, const AngleInterval& interval, bool up_cur,
                      double min_ratio);

/// Invert a = (1 - cos(phi)) / 2 over one half-plane. Inputs are clipped to
/// [0, 1] first (sampling-noise guard). upper=true maps into [0, pi],
/// upper=false into [pi, 2 pi]; lo <= hi in both cases.
AngleInterval invert_to_scaled_angle(const Interval01& a_interval, bool upper_half_plane);

/// Alg. update step: new bound = (2 pi floor(K * old / 2 pi) + scaled) / K,
/// i.e. the completed full turns of the old bound plus the refreshed
/// fractional part, rescaled.
AngleInterval update_theta_interval(const AngleInterval& current, std::int64_t big_k,
                                    const AngleInterval& scaled);

/// Maximum number of rounds T = ceil(log_r(r pi / (8 epsilon))); equals
/// ceil(log2(pi / (4 epsilon))) for r = 2.
int max_rounds(double epsilon, double min_ratio);

/// Shot ceiling per round,
/// ceil( 12 / sin^4(pi/30) * ln( (2/alpha) log_3(3 pi / (20 epsilon)) ) ).
std::uint64_t n_max(double epsilon, double alpha);

/// Upper bound on total Grover applications,
/// (1.15e6 / epsilon) * ln( (2/alpha) log_3(3 pi / (20 epsilon)) ).
double oracle_call_bound(double epsilon, double alpha);

/// Replaceable measurement source, mainly for noise-free driving in tests.
using GroverSampler = std::function<BinomialTally(const AmplitudeProblem&, std::int64_t,
                                                  std::uint64_t, RandomSource&)>;

/// The main estimation loop. Iterates find_next_k / measure / per-round
/// confidence interval at level 1 - alpha/T / half-plane inversion / interval
/// update until the theta interval is no wider than 2 epsilon, merging
/// tallies across consecutive iterations that share the same k. Throws
/// std::runtime_error if the iteration count exceeds the theoretical budget
/// (implementation defect, not a statistical event).
EstimationResult run_iqae(const IqaeConfig& config, const AmplitudeProblem& problem,
                          RandomSource& rng, const GroverSampler& sampler = {});

/// N_oracle divided by the theoretical scaling
/// ln((2/alpha) log_3(3 pi / (20 epsilon))) / epsilon.
double overhead_statistic(const EstimationResult& result, double epsilon, double alpha);

/// The denominator of overhead_statistic, exposed for reporting.
double theoretical_scaling(double epsilon, double alpha);

}  // namespace ae

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ae/confint.hpp"
#include "ae/oracle.hpp"

namespace ae {

/// One rung of the maximum-likelihood estimation schedule.
struct ScheduleRecord {
    std::int64_t k = 0;
    BinomialTally tally;
};

/// Raw ancilla counts from phase-estimation sampling.
struct QaeSampleSet {
    int m = 0;
    std::vector<std::uint64_t> counts;  ///< over y in {0..2^m - 1}, sums to n_shots
};

struct McResult {
    double estimate = 0.0;
    Interval01 interval;
    std::uint64_t n_oracle = 0;  ///< classical samples drawn
};

/// Classical Monte Carlo baseline: n_samples bare measurements with a
/// Clopper-Pearson interval at level 1 - alpha.
McResult run_mc(const AmplitudeProblem& problem, std::uint64_t n_samples, double alpha,
                RandomSource& rng);

/// Joint log-likelihood of the schedule tallies at angle theta:
/// sum_j [ h_j ln sin^2((2 k_j + 1) theta) + (N_j - h_j) ln cos^2(...) ],
/// log arguments clamped at 1e-300.
double mlae_loglik(double theta, std::span<const ScheduleRecord> records);

struct MlaeResult {
    double theta_hat = 0.0;
    double estimate = 0.0;       ///< sin^2(theta_hat)
    Interval01 interval;         ///< likelihood-ratio interval at level 1 - alpha
    bool lo_at_boundary = false;
    bool hi_at_boundary = false;
    std::uint64_t n_oracle = 0;  ///< n_shots * (2^m - 1)
    std::vector<ScheduleRecord> records;
    std::vector<std::string> warnings;
};

/// Maximize mlae_loglik over [0, pi/2] by dense grid plus golden-section
/// refinement, then attach the likelihood-ratio interval. The grid is
/// refined automatically when the highest schedule power would leave fewer
/// than ~10 grid points per likelihood oscillation.
MlaeResult mlae_estimate(std::vector<ScheduleRecord> records, double alpha,
                         std::size_t grid_points = 100000);

/// Power-of-two schedule k_j = 2^j, j = 0..m-1, n_shots measurements each.
MlaeResult run_mlae(const AmplitudeProblem& problem, int m, std::uint64_t n_shots,
                    double alpha, RandomSource& rng);

/// Likelihood of observing the folded grid index y_index in {0..M/2} when the
/// true amplitude is a_prime: the raw outcome probability plus its mirror
/// when the mirror is a distinct outcome.
double qae_likelihood(std::int64_t y_index, double a_prime, int m);

struct QaeMleResult {
    double grid_estimate = 0.0;  ///< sin^2(pi y_med / M), y_med the folded sample median
    double mle_estimate = 0.0;
    Interval01 interval;         ///< likelihood-ratio interval at level 1 - alpha
    bool lo_at_boundary = false;
    bool hi_at_boundary = false;
    std::uint64_t n_oracle = 0;  ///< n_shots * (2^m - 1)
    QaeSampleSet samples;
};

/// Estimation half of the phase-estimation pipeline, taking (possibly
/// fractional) outcome weights over the raw grid y in {0..2^m - 1}. The MLE
/// is located by golden-section search over the two grid cells adjacent to
/// the median grid estimate; sample sets concentrated on a boundary grid
/// point fall back to the single existing cell. Median ties on an even count
/// break toward the lower grid index.
QaeMleResult qae_mle_from_counts(const std::vector<double>& counts, int m, double alpha);

/// Sample the ancilla register and run qae_mle_from_counts.
QaeMleResult run_qae_mle(const AmplitudeProblem& problem, int m, std::uint64_t n_shots,
                         double alpha, RandomSource& rng);

/// Golden-section maximizer on [lo, hi], tolerance on the argument.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

}  // namespace ae

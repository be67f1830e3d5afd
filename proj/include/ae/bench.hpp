#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ae/baselines.hpp"
#include "ae/iqae.hpp"

namespace ae {

enum class Algo { iqae, mlae, qae, mc };

std::string algo_name(Algo algo);
std::optional<Algo> parse_algo(const std::string& name);

/// Parameters for a single estimation run. epsilon / ci_method / min_ratio
/// drive the iterative algorithm, m drives the schedule depth (mlae) or the
/// ancilla count (qae), n_shots is the per-query shot count and doubles as
/// the sample budget for mc.
struct RunParams {
    Algo algo = Algo::iqae;
    double a = 0.5;
    double epsilon = 1e-3;
    double alpha = 0.05;
    std::uint64_t n_shots = 100;
    int m = 5;
    CiMethod ci_method = CiMethod::clopper_pearson;
    double min_ratio = 2.0;
};

/// One CSV row. Column order is fixed: algorithm, a, epsilon, alpha,
/// seed_index, n_oracle, interval_lo, interval_hi, covered, overhead,
/// wall_time. epsilon and overhead are 0 for algorithms they do not apply to.
struct SweepRow {
    std::string algorithm;
    double a = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    std::uint64_t seed_index = 0;
    std::uint64_t n_oracle = 0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    bool covered = false;
    double overhead = 0.0;
    double wall_time = 0.0;
};

/// Every row is fully determined by (master seed, row index); wall_time is
/// measured but never part of any summary.
SweepRow run_single(const RunParams& params, std::uint64_t master_seed,
                    std::uint64_t row_index);

struct SweepSpec {
    std::vector<double> a_values;
    std::vector<double> epsilons;
    std::vector<double> alphas;
    std::uint64_t n_shots = 100;
    std::uint64_t repetitions = 1;
    CiMethod ci_method = CiMethod::clopper_pearson;
    double min_ratio = 2.0;
    std::uint64_t seed = 1;
};

struct SweepSummary {
    double epsilon = 0.0;
    double alpha = 0.0;
    double mean_overhead = 0.0;
    double max_overhead = 0.0;
    double coverage = 0.0;
    std::size_t rows = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summaries;
};

/// Iterative-algorithm sweep over epsilon x alpha x a x repetition, row order
/// fixed in that nesting order.
SweepResult run_sweep(const SweepSpec& spec);

/// Per-(epsilon, alpha) mean/max overhead and coverage, in first-seen order.
std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

struct KscheduleRow {
    std::size_t iteration = 0;  ///< 1-based index of the ratio K_{i+1}/K_i
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

struct KscheduleResult {
    std::vector<KscheduleRow> per_iteration;
    double mean_ratio_after_first_round = 0.0;  ///< pooled over ratios with K_i > 2
    std::size_t ratio_one_first_round = 0;      ///< repeats observed while K_i = 2
    std::size_t repetitions = 0;
};

KscheduleResult run_kschedule(double a, double epsilon, double alpha,
                              std::uint64_t n_shots, std::uint64_t repetitions,
                              CiMethod ci_method, double min_ratio,
                              std::uint64_t master_seed);

struct CompareRow {
    std::string algorithm;
    std::uint64_t budget = 0;
    std::uint64_t seed_index = 0;
    std::uint64_t calls = 0;     ///< oracle applications actually used
    double half_width = 0.0;     ///< half-width of the returned 1-alpha interval
    double estimate = 0.0;
};

struct CompareSlope {
    std::string algorithm;
    double slope = 0.0;  ///< log-log regression of half_width on calls
};

struct CompareResult {
    std::vector<CompareRow> rows;
    std::vector<CompareSlope> slopes;
};

/// Error-versus-budget comparison of all four algorithms at a common target.
/// Budgets are matched per algorithm: mc draws exactly `budget` samples, the
/// schedule algorithms use the deepest schedule fitting the budget, and the
/// iterative algorithm targets an accuracy whose expected cost is `budget`.
CompareResult run_compare(double a, double alpha, const std::vector<std::uint64_t>& budgets,
                          std::uint64_t seeds_per_budget, std::uint64_t n_shots,
                          std::uint64_t master_seed);

/// Least-squares slope of ln(y) against ln(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Lossless double formatting (17 significant digits).
std::string format_double(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);
void write_kschedule_csv(std::ostream& out, const KscheduleResult& result);
void write_compare_csv(std::ostream& out, const CompareResult& result);

}  // namespace ae

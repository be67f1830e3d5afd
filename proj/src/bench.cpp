#include "ae/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ae {

namespace {

constexpr const char* kSweepSchema = "# schema sweep_row.v1";
constexpr const char* kSweepHeader =
    "algorithm,a,epsilon,alpha,seed_index,n_oracle,interval_lo,interval_hi,covered,overhead,"
    "wall_time";
constexpr const char* kKscheduleSchema = "# schema kschedule_row.v1";
constexpr const char* kKscheduleHeader = "iteration,mean,stddev,min,max,count";
constexpr const char* kCompareSchema = "# schema compare_row.v1";
constexpr const char* kCompareHeader = "algorithm,budget,seed_index,calls,half_width,estimate";

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Accuracy whose expected iterative-algorithm cost is roughly `budget`,
/// from the empirical cost model 5 * log-factor / epsilon.
double epsilon_for_budget(std::uint64_t budget, double alpha) {
    double epsilon = 0.05;
    for (int i = 0; i < 4; ++i) {
        const double scaled = 5.0 * theoretical_scaling(epsilon, alpha) * epsilon /
                              static_cast<double>(budget);
        epsilon = std::clamp(scaled, 1e-7, 0.3);
    }
    return epsilon;
}

/// Deepest power-of-two schedule whose cost n_shots * (2^m - 1) fits budget.
int schedule_depth_for_budget(std::uint64_t budget, std::uint64_t n_shots) {
    int m = 1;
    while (m < 24 && n_shots * ((std::uint64_t{1} << (m + 1)) - 1) <= budget) ++m;
    return m;
}

}  // namespace

std::string algo_name(Algo algo) {
    switch (algo) {
        case Algo::iqae: return "iqae";
        case Algo::mlae: return "mlae";
        case Algo::qae: return "qae";
        case Algo::mc: return "mc";
    }
    return "unknown";
}

std::optional<Algo> parse_algo(const std::string& name) {
    if (name == "iqae") return Algo::iqae;
    if (name == "mlae") return Algo::mlae;
    if (name == "qae") return Algo::qae;
    if (name == "mc") return Algo::mc;
    return std::nullopt;
}

SweepRow run_single(const RunParams& params, std::uint64_t master_seed,
                    std::uint64_t row_index) {
    const AmplitudeProblem problem = AmplitudeProblem::from_amplitude(params.a);
    RandomSource rng = RandomSource(master_seed).derive(row_index);

    SweepRow row;
    row.algorithm = algo_name(params.algo);
    row.a = params.a;
    row.alpha = params.alpha;
    row.seed_index = row_index;

    const auto start = std::chrono::steady_clock::now();
    Interval01 interval;
    switch (params.algo) {
        case Algo::iqae: {
            IqaeConfig config;
            config.epsilon = params.epsilon;
            config.alpha = params.alpha;
            config.n_shots = params.n_shots;
            config.ci_method = params.ci_method;
            config.min_ratio = params.min_ratio;
            config.seed = rng.seed();
            const EstimationResult result = run_iqae(config, problem, rng);
            interval = result.a_interval;
            row.epsilon = params.epsilon;
            row.n_oracle = result.n_oracle;
            row.overhead = overhead_statistic(result, params.epsilon, params.alpha);
            break;
        }
        case Algo::mlae: {
            const MlaeResult result = run_mlae(problem, params.m, params.n_shots,
                                               params.alpha, rng);
            interval = result.interval;
            row.n_oracle = result.n_oracle;
            break;
        }
        case Algo::qae: {
            const QaeMleResult result = run_qae_mle(problem, params.m, params.n_shots,
                                                    params.alpha, rng);
            interval = result.interval;
            row.n_oracle = result.n_oracle;
            break;
        }
        case Algo::mc: {
            const McResult result = run_mc(problem, params.n_shots, params.alpha, rng);
            interval = result.interval;
            row.n_oracle = result.n_oracle;
            break;
        }
    }
    row.wall_time = elapsed_seconds(start);
    row.interval_lo = interval.lo;
    row.interval_hi = interval.hi;
    row.covered = interval.contains(params.a);
    return row;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.a_values.empty() || spec.epsilons.empty() || spec.alphas.empty())
        throw std::invalid_argument("sweep lists must be nonempty");
    if (spec.repetitions == 0) throw std::invalid_argument("repetitions must be positive");

    SweepResult result;
    std::uint64_t row_index = 0;
    for (const double epsilon : spec.epsilons) {
        for (const double alpha : spec.alphas) {
            for (const double a : spec.a_values) {
                for (std::uint64_t rep = 0; rep < spec.repetitions; ++rep) {
                    RunParams params;
                    params.algo = Algo::iqae;
                    params.a = a;
                    params.epsilon = epsilon;
                    params.alpha = alpha;
                    params.n_shots = spec.n_shots;
                    params.ci_method = spec.ci_method;
                    params.min_ratio = spec.min_ratio;
                    result.rows.push_back(run_single(params, spec.seed, row_index));
                    ++row_index;
                }
            }
        }
    }
    result.summaries = summarize(result.rows);
    return result;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
    std::vector<SweepSummary> summaries;
    const auto find_group = [&](double epsilon, double alpha) -> SweepSummary& {
        for (SweepSummary& summary : summaries)
            if (summary.epsilon == epsilon && summary.alpha == alpha) return summary;
        summaries.push_back({epsilon, alpha, 0.0, 0.0, 0.0, 0});
        return summaries.back();
    };
    for (const SweepRow& row : rows) {
        SweepSummary& summary = find_group(row.epsilon, row.alpha);
        summary.mean_overhead += row.overhead;  // sum for now, divided below
        summary.max_overhead = std::max(summary.max_overhead, row.overhead);
        summary.coverage += row.covered ? 1.0 : 0.0;
        summary.rows += 1;
    }
    for (SweepSummary& summary : summaries) {
        summary.mean_overhead /= static_cast<double>(summary.rows);
        summary.coverage /= static_cast<double>(summary.rows);
    }
    return summaries;
}

KscheduleResult run_kschedule(double a, double epsilon, double alpha, std::uint64_t n_shots,
                              std::uint64_t repetitions, CiMethod ci_method, double min_ratio,
                              std::uint64_t master_seed) {
    if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
    const AmplitudeProblem problem = AmplitudeProblem::from_amplitude(a);

    KscheduleResult result;
    result.repetitions = repetitions;
    double pooled_sum = 0.0;
    std::size_t pooled_count = 0;
    std::vector<std::vector<double>> per_index;  // ratios grouped by iteration index

    for (std::uint64_t rep = 0; rep < repetitions; ++rep) {
        RandomSource rng = RandomSource(master_seed).derive(rep);
        IqaeConfig config;
        config.epsilon = epsilon;
        config.alpha = alpha;
        config.n_shots = n_shots;
        config.ci_method = ci_method;
        config.min_ratio = min_ratio;
        config.seed = rng.seed();
        const EstimationResult run = run_iqae(config, problem, rng);
        for (std::size_t i = 0; i + 1 < run.trace.size(); ++i) {
            const double ratio = static_cast<double>(run.trace[i + 1].big_k) /
                                 static_cast<double>(run.trace[i].big_k);
            if (per_index.size() <= i) per_index.resize(i + 1);
            per_index[i].push_back(ratio);
            if (run.trace[i].big_k > 2) {
                pooled_sum += ratio;
                ++pooled_count;
            } else if (ratio == 1.0) {
                ++result.ratio_one_first_round;
            }
        }
    }

    for (std::size_t i = 0; i < per_index.size(); ++i) {
        const std::vector<double>& ratios = per_index[i];
        KscheduleRow row;
        row.iteration = i + 1;
        row.count = ratios.size();
        row.min = *std::min_element(ratios.begin(), ratios.end());
        row.max = *std::max_element(ratios.begin(), ratios.end());
        double sum = 0.0;
        for (const double r : ratios) sum += r;
        row.mean = sum / static_cast<double>(ratios.size());
        double var = 0.0;
        for (const double r : ratios) var += (r - row.mean) * (r - row.mean);
        row.stddev = std::sqrt(var / static_cast<double>(ratios.size()));
        result.per_iteration.push_back(row);
    }
    result.mean_ratio_after_first_round =
        pooled_count == 0 ? 0.0 : pooled_sum / static_cast<double>(pooled_count);
    return result;
}

CompareResult run_compare(double a, double alpha, const std::vector<std::uint64_t>& budgets,
                          std::uint64_t seeds_per_budget, std::uint64_t n_shots,
                          std::uint64_t master_seed) {
    if (budgets.empty()) throw std::invalid_argument("budget list must be nonempty");
    for (const std::uint64_t budget : budgets)
        if (budget == 0) throw std::invalid_argument("budgets must be positive");
    if (seeds_per_budget == 0) throw std::invalid_argument("seed count must be positive");

    CompareResult result;
    const Algo algos[] = {Algo::iqae, Algo::mlae, Algo::qae, Algo::mc};
    std::uint64_t row_index = 0;
    for (const Algo algo : algos) {
        std::vector<double> calls_log_x;
        std::vector<double> width_log_y;
        for (const std::uint64_t budget : budgets) {
            for (std::uint64_t s = 0; s < seeds_per_budget; ++s) {
                const AmplitudeProblem problem = AmplitudeProblem::from_amplitude(a);
                RandomSource rng = RandomSource(master_seed).derive(row_index);
                ++row_index;

                CompareRow row;
                row.algorithm = algo_name(algo);
                row.budget = budget;
                row.seed_index = s;
                switch (algo) {
                    case Algo::iqae: {
                        IqaeConfig config;
                        config.epsilon = epsilon_for_budget(budget, alpha);
                        config.alpha = alpha;
                        config.n_shots = n_shots;
                        config.seed = rng.seed();
                        const EstimationResult run = run_iqae(config, problem, rng);
                        row.calls = run.n_oracle;
                        row.half_width = 0.5 * run.a_interval.width();
                        row.estimate = run.estimate;
                        break;
                    }
                    case Algo::mlae: {
                        const int m = schedule_depth_for_budget(budget, n_shots);
                        const MlaeResult run = run_mlae(problem, m, n_shots, alpha, rng);
                        row.calls = run.n_oracle;
                        row.half_width = 0.5 * run.interval.width();
                        row.estimate = run.estimate;
                        break;
                    }
                    case Algo::qae: {
                        const int m = schedule_depth_for_budget(budget, n_shots);
                        const QaeMleResult run = run_qae_mle(problem, m, n_shots, alpha, rng);
                        row.calls = run.n_oracle;
                        row.half_width = 0.5 * run.interval.width();
                        row.estimate = run.mle_estimate;
                        break;
                    }
                    case Algo::mc: {
                        const McResult run = run_mc(problem, budget, alpha, rng);
                        row.calls = run.n_oracle;
                        row.half_width = 0.5 * run.interval.width();
                        row.estimate = run.estimate;
                        break;
                    }
                }
                if (row.calls > 0 && row.half_width > 0.0) {
                    calls_log_x.push_back(static_cast<double>(row.calls));
                    width_log_y.push_back(row.half_width);
                }
                result.rows.push_back(row);
            }
        }
        result.slopes.push_back({algo_name(algo), fit_loglog_slope(calls_log_x, width_log_y)});
    }
    return result;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope fit needs at least two points");
    const std::size_t n = x.size();
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += std::log(x[i]);
        mean_y += std::log(y[i]);
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double cov = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mean_x;
        cov += dx * (std::log(y[i]) - mean_y);
        var += dx * dx;
    }
    if (var == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
    return cov / var;
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepSchema << '\n' << kSweepHeader << '\n';
    for (const SweepRow& row : rows) {
        out << row.algorithm << ',' << format_double(row.a) << ','
            << format_double(row.epsilon) << ',' << format_double(row.alpha) << ','
            << row.seed_index << ',' << row.n_oracle << ',' << format_double(row.interval_lo)
            << ',' << format_double(row.interval_hi) << ',' << (row.covered ? 1 : 0) << ','
            << format_double(row.overhead) << ',' << format_double(row.wall_time) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepSchema)
        throw std::runtime_error("unrecognized sweep csv schema");
    if (!std::getline(in, line) || line != kSweepHeader)
        throw std::runtime_error("unrecognized sweep csv header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream fields(line);
        std::string field;
        SweepRow row;
        const auto next = [&]() {
            if (!std::getline(fields, field, ','))
                throw std::runtime_error("truncated sweep csv row");
            return field;
        };
        row.algorithm = next();
        row.a = std::stod(next());
        row.epsilon = std::stod(next());
        row.alpha = std::stod(next());
        row.seed_index = std::stoull(next());
        row.n_oracle = std::stoull(next());
        row.interval_lo = std::stod(next());
        row.interval_hi = std::stod(next());
        row.covered = std::stoull(next()) != 0;
        row.overhead = std::stod(next());
        row.wall_time = std::stod(next());
        rows.push_back(row);
    }
    return rows;
}

void write_kschedule_csv(std::ostream& out, const KscheduleResult& result) {
    out << kKscheduleSchema << '\n' << kKscheduleHeader << '\n';
    for (const KscheduleRow& row : result.per_iteration) {
        out << row.iteration << ',' << format_double(row.mean) << ','
            << format_double(row.stddev) << ',' << format_double(row.min) << ','
            << format_double(row.max) << ',' << row.count << '\n';
    }
}

void write_compare_csv(std::ostream& out, const CompareResult& result) {
    out << kCompareSchema << '\n' << kCompareHeader << '\n';
    for (const CompareRow& row : result.rows) {
        out << row.algorithm << ',' << row.budget << ',' << row.seed_index << ',' << row.calls
            << ',' << format_double(row.half_width) << ',' << format_double(row.estimate)
            << '\n';
    }
}

}  // namespace ae

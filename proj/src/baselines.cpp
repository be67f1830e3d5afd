#include "ae/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kLogFloor = 1e-300;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

double clamped_log(double v) { return std::log(std::max(v, kLogFloor)); }

}  // namespace

McResult run_mc(const AmplitudeProblem& problem, std::uint64_t n_samples, double alpha,
                RandomSource& rng) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
    check_alpha(alpha);
    const BinomialTally tally = sample_grover(problem, 0, n_samples, rng);
    McResult result;
    result.estimate = static_cast<double>(tally.ones) / static_cast<double>(tally.shots);
    result.interval = clopper_pearson_interval(tally, alpha);
    result.n_oracle = n_samples;
    return result;
}

double mlae_loglik(double theta, std::span<const ScheduleRecord> records) {
    double total = 0.0;
    for (const ScheduleRecord& record : records) {
        const double angle = (2.0 * static_cast<double>(record.k) + 1.0) * theta;
        const double s = std::sin(angle);
        const double s2 = s * s;
        const double c2 = std::max(1.0 - s2, 0.0);
        total += static_cast<double>(record.tally.ones) * clamped_log(s2) +
                 static_cast<double>(record.tally.shots - record.tally.ones) * clamped_log(c2);
    }
    return total;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

MlaeResult mlae_estimate(std::vector<ScheduleRecord> records, double alpha,
                         std::size_t grid_points) {
    if (records.empty()) throw std::invalid_argument("schedule must be nonempty");
    check_alpha(alpha);
    MlaeResult result;

    std::int64_t k_top = 0;
    for (const ScheduleRecord& record : records) k_top = std::max(k_top, record.k);
    // keep >= 10 grid points per oscillation period of the fastest term
    const auto required = static_cast<std::size_t>(5 * (2 * k_top + 1));
    std::size_t grid_n = grid_points;
    if (grid_n < required) {
        grid_n = required;
        result.warnings.push_back("grid refined to resolve the likelihood oscillations");
    }

    const std::span<const ScheduleRecord> view(records);
    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    const double step = kHalfPi / static_cast<double>(grid_n);
    for (std::size_t i = 0; i <= grid_n; ++i) {
        const double value = mlae_loglik(step * static_cast<double>(i), view);
        if (value > best_value) {
            best_value = value;
            best_index = i;
        }
    }
    const double bracket_lo = best_index == 0 ? 0.0 : step * static_cast<double>(best_index - 1);
    const double bracket_hi =
        best_index == grid_n ? kHalfPi : step * static_cast<double>(best_index + 1);
    result.theta_hat = golden_section_max(
        [&](double theta) { return mlae_loglik(theta, view); }, bracket_lo, bracket_hi, 1e-12);
    const double sin_hat = std::sin(result.theta_hat);
    result.estimate = sin_hat * sin_hat;

    // level set scanned uniformly in theta (u = theta / (pi/2)), where the
    // oscillations are evenly spaced, then mapped back to a
    const auto loglik_u = [&](double u) { return mlae_loglik(u * kHalfPi, view); };
    const LevelSetInterval level = likelihood_ratio_interval(
        loglik_u, result.theta_hat / kHalfPi, alpha, {0.0, 1.0}, grid_n);
    const double sin_lo = std::sin(level.interval.lo * kHalfPi);
    const double sin_hi = std::sin(level.interval.hi * kHalfPi);
    result.interval = {sin_lo * sin_lo, sin_hi * sin_hi};
    result.lo_at_boundary = level.lo_at_boundary;
    result.hi_at_boundary = level.hi_at_boundary;
    result.records = std::move(records);
    return result;
}

MlaeResult run_mlae(const AmplitudeProblem& problem, int m, std::uint64_t n_shots, double alpha,
                    RandomSource& rng) {
    if (m < 1 || m > 24) throw std::invalid_argument("schedule depth m must lie in [1, 24]");
    if (n_shots == 0) throw std::invalid_argument("n_shots must be positive");
    std::vector<ScheduleRecord> records;
    records.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const std::int64_t k = std::int64_t{1} << j;
        records.push_back({k, sample_grover(problem, k, n_shots, rng)});
    }
    MlaeResult result = mlae_estimate(std::move(records), alpha);
    result.n_oracle = n_shots * ((std::uint64_t{1} << m) - 1);
    return result;
}

double qae_likelihood(std::int64_t y_index, double a_prime, int m) {
    if (m < 1 || m > 30) throw std::invalid_argument("ancilla count m must lie in [1, 30]");
    const std::int64_t half = std::int64_t{1} << (m - 1);
    if (y_index < 0 || y_index > half)
        throw std::invalid_argument("grid index must lie in [0, M/2]");
    if (!(a_prime >= 0.0 && a_prime <= 1.0))
        throw std::invalid_argument("amplitude must lie in [0, 1]");
    const double theta = std::asin(std::sqrt(a_prime));
    const double p = qpe_probability(theta, m, static_cast<std::uint64_t>(y_index));
    // mirror outcome M - y is a distinct raw outcome mapping to the same grid
    // value except at the self-mirrored indices 0 and M/2
    if (y_index == 0 || y_index == half) return p;
    return 2.0 * p;
}

QaeMleResult qae_mle_from_counts(const std::vector<double>& counts, int m, double alpha) {
    if (m < 1 || m > 30) throw std::invalid_argument("ancilla count m must lie in [1, 30]");
    check_alpha(alpha);
    const std::size_t size = std::size_t{1} << m;
    if (counts.size() != size)
        throw std::invalid_argument("counts must cover all 2^m outcomes");
    const std::size_t half = size / 2;

    std::vector<double> folded(half + 1, 0.0);
    double total = 0.0;
    for (std::size_t y = 0; y < size; ++y) {
        if (counts[y] < 0.0) throw std::invalid_argument("counts must be nonnegative");
        folded[y <= half ? y : size - y] += counts[y];
        total += counts[y];
    }
    if (!(total > 0.0)) throw std::invalid_argument("counts must not be empty");

    // weighted lower median of the folded samples
    std::size_t median = half;
    double cumulative = 0.0;
    for (std::size_t i = 0; i <= half; ++i) {
        cumulative += folded[i];
        if (cumulative >= 0.5 * total) {
            median = i;
            break;
        }
    }

    QaeMleResult result;
    const auto grid_value = [&](std::size_t i) {
        const double s = std::sin(kPi * static_cast<double>(i) / static_cast<double>(size));
        return s * s;
    };
    result.grid_estimate = grid_value(median);

    const auto loglik = [&](double a_prime) {
        double sum = 0.0;
        for (std::size_t i = 0; i <= half; ++i)
            if (folded[i] > 0.0)
                sum += folded[i] *
                       clamped_log(qae_likelihood(static_cast<std::int64_t>(i), a_prime, m));
        return sum;
    };

    // search the one or two grid cells adjacent to the grid estimate
    double best_a = result.grid_estimate;
    double best_value = loglik(best_a);
    const auto search_cell = [&](double lo, double hi) {
        const double candidate = golden_section_max(loglik, lo, hi, 1e-12);
        const double value = loglik(candidate);
        if (value > best_value) {
            best_value = value;
            best_a = candidate;
        }
    };
    if (median > 0) search_cell(grid_value(median - 1), grid_value(median));
    if (median < half) search_cell(grid_value(median), grid_value(median + 1));
    result.mle_estimate = best_a;

    const auto loglik_u = [&](double u) {
        const double s = std::sin(u * kHalfPi);
        return loglik(s * s);
    };
    const double u_hat = std::asin(std::sqrt(best_a)) / kHalfPi;
    const std::size_t grid_n = std::max<std::size_t>(4000, 8 * size);
    const LevelSetInterval level =
        likelihood_ratio_interval(loglik_u, u_hat, alpha, {0.0, 1.0}, grid_n);
    const double sin_lo = std::sin(level.interval.lo * kHalfPi);
    const double sin_hi = std::sin(level.interval.hi * kHalfPi);
    result.interval = {sin_lo * sin_lo, sin_hi * sin_hi};
    result.lo_at_boundary = level.lo_at_boundary;
    result.hi_at_boundary = level.hi_at_boundary;
    return result;
}

QaeMleResult run_qae_mle(const AmplitudeProblem& problem, int m, std::uint64_t n_shots,
                         double alpha, RandomSource& rng) {
    if (n_shots == 0) throw std::invalid_argument("n_shots must be positive");
    const std::vector<std::uint64_t> counts = sample_qpe(problem.theta, m, n_shots, rng);
    std::vector<double> weights(counts.begin(), counts.end());
    QaeMleResult result = qae_mle_from_counts(weights, m, alpha);
    result.n_oracle = n_shots * ((std::uint64_t{1} << m) - 1);
    result.samples = {m, counts};
    return result;
}

}  // namespace ae

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ae/bench.hpp"

using namespace ae;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.a_values = {0.3, 0.5};
    spec.epsilons = {1e-3};
    spec.alphas = {0.05};
    spec.n_shots = 100;
    spec.repetitions = 5;
    spec.seed = 42;
    return spec;
}

}  // namespace

TEST_CASE("algorithm names round trip") {
    for (const Algo algo : {Algo::iqae, Algo::mlae, Algo::qae, Algo::mc})
        CHECK(parse_algo(algo_name(algo)) == algo);
    CHECK_FALSE(parse_algo("qaes").has_value());
}

TEST_CASE("a row is a pure function of master seed and row index") {
    RunParams params;
    params.algo = Algo::iqae;
    params.a = 0.4;
    const SweepRow first = run_single(params, 7, 3);
    const SweepRow second = run_single(params, 7, 3);
    CHECK(first.n_oracle == second.n_oracle);
    CHECK(first.interval_lo == second.interval_lo);
    CHECK(first.interval_hi == second.interval_hi);
    CHECK(first.overhead == second.overhead);
    CHECK(first.covered == second.covered);
    const SweepRow other = run_single(params, 7, 4);
    CHECK(other.interval_lo != first.interval_lo);  // different stream
}

TEST_CASE("run_single covers every algorithm") {
    RunParams params;
    params.a = 0.5;
    params.n_shots = 100;
    params.m = 3;
    for (const Algo algo : {Algo::iqae, Algo::mlae, Algo::qae, Algo::mc}) {
        params.algo = algo;
        const SweepRow row = run_single(params, 11, 0);
        CHECK(row.algorithm == algo_name(algo));
        CHECK(row.n_oracle > 0);
        CHECK(row.interval_lo <= row.interval_hi);
        CHECK(row.covered == (row.interval_lo <= 0.5 && 0.5 <= row.interval_hi));
    }
}

TEST_CASE("sweep rows rerun identically and summaries stay consistent") {
    const SweepSpec spec = small_spec();
    const SweepResult first = run_sweep(spec);
    const SweepResult second = run_sweep(spec);
    REQUIRE(first.rows.size() == 10);
    for (std::size_t i = 0; i < first.rows.size(); ++i) {
        CHECK(first.rows[i].n_oracle == second.rows[i].n_oracle);
        CHECK(first.rows[i].interval_lo == second.rows[i].interval_lo);
        CHECK(first.rows[i].overhead == second.rows[i].overhead);
    }
    REQUIRE(first.summaries.size() == 1);
    CHECK(first.summaries[0].rows == 10);
    CHECK(first.summaries[0].max_overhead >= first.summaries[0].mean_overhead);
    CHECK(first.summaries[0].max_overhead < 1.15e6);

    // coverage across the sweep honors the level up to 3 sigma of slack
    const double alpha = 0.05;
    const double sigma = std::sqrt(alpha * (1 - alpha) / double(first.rows.size()));
    CHECK(first.summaries[0].coverage >= 1 - alpha - 3 * sigma);
}

TEST_CASE("sweep validates its specification") {
    SweepSpec spec = small_spec();
    spec.repetitions = 0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = small_spec();
    spec.a_values.clear();
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("sweep csv round trips losslessly") {
    const SweepResult result = run_sweep(small_spec());
    std::stringstream stream;
    write_sweep_csv(stream, result.rows);
    const std::vector<SweepRow> parsed = read_sweep_csv(stream);
    REQUIRE(parsed.size() == result.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].algorithm == result.rows[i].algorithm);
        CHECK(parsed[i].a == result.rows[i].a);
        CHECK(parsed[i].epsilon == result.rows[i].epsilon);
        CHECK(parsed[i].alpha == result.rows[i].alpha);
        CHECK(parsed[i].seed_index == result.rows[i].seed_index);
        CHECK(parsed[i].n_oracle == result.rows[i].n_oracle);
        CHECK(parsed[i].interval_lo == result.rows[i].interval_lo);
        CHECK(parsed[i].interval_hi == result.rows[i].interval_hi);
        CHECK(parsed[i].covered == result.rows[i].covered);
        CHECK(parsed[i].overhead == result.rows[i].overhead);
        CHECK(parsed[i].wall_time == result.rows[i].wall_time);
    }
    // summaries recomputed from the file reproduce the originals exactly
    const std::vector<SweepSummary> again = summarize(parsed);
    REQUIRE(again.size() == result.summaries.size());
    CHECK(again[0].mean_overhead == result.summaries[0].mean_overhead);
    CHECK(again[0].max_overhead == result.summaries[0].max_overhead);
    CHECK(again[0].coverage == result.summaries[0].coverage);

    std::stringstream bad("not,a,schema\n");
    CHECK_THROWS_AS(read_sweep_csv(bad), std::runtime_error);
}

TEST_CASE("kschedule ratios never fall below one") {
    const KscheduleResult result =
        run_kschedule(0.5, 1e-3, 0.05, 100, 20, CiMethod::clopper_pearson, 2.0, 5);
    CHECK(result.repetitions == 20);
    REQUIRE_FALSE(result.per_iteration.empty());
    std::size_t total = 0;
    for (const KscheduleRow& row : result.per_iteration) {
        CHECK(row.min >= 1.0);
        CHECK(row.max >= row.min);
        CHECK(row.mean >= row.min);
        CHECK(row.mean <= row.max);
        total += row.count;
    }
    CHECK(total > 0);
    CHECK_THROWS_AS(run_kschedule(0.5, 1e-3, 0.05, 100, 0, CiMethod::clopper_pearson, 2.0, 5),
                    std::invalid_argument);
}

TEST_CASE("compare emits rows and slopes for every algorithm") {
    const CompareResult result = run_compare(0.5, 0.05, {2000, 8000}, 3, 100, 77);
    CHECK(result.rows.size() == 4 * 2 * 3);
    for (const CompareRow& row : result.rows) {
        CHECK(row.calls > 0);
        CHECK(row.half_width > 0.0);
        if (row.algorithm == "mc") CHECK(row.calls == row.budget);
        if (row.algorithm == "mlae" || row.algorithm == "qae") {
            CHECK(row.calls <= row.budget);  // deepest schedule fitting the budget
            CHECK(row.calls * 2 + 100 > row.budget);
        }
    }
    REQUIRE(result.slopes.size() == 4);
    for (const CompareSlope& slope : result.slopes) CHECK(std::isfinite(slope.slope));
    CHECK_THROWS_AS(run_compare(0.5, 0.05, {0}, 3, 100, 77), std::invalid_argument);
    CHECK_THROWS_AS(run_compare(0.5, 0.05, {}, 3, 100, 77), std::invalid_argument);
}

TEST_CASE("loglog slope fit recovers an exact power law") {
    std::vector<double> x, y;
    for (int i = 1; i <= 6; ++i) {
        x.push_back(std::pow(10.0, i));
        y.push_back(5.0 * std::pow(10.0, -0.5 * i));
    }
    CHECK(fit_loglog_slope(x, y) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("format_double survives a parse round trip") {
    for (const double v : {0.1, 1.0 / 3.0, 5.4121557149903412e3, 1e-17, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

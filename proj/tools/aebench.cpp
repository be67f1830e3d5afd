// Command-line benchmark harness for the amplitude-estimation library.
//
// Subcommands: run (single estimation), sweep (grid of iterative runs with
// overhead summaries), kschedule (growth-factor statistics of the Grover
// power sequence), compare (error versus oracle budget for all algorithms).
// All output is CSV with a schema comment line; seeds make every row
// reproducible.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

#include "ae/bench.hpp"

namespace {

ae::CiMethod parse_ci(const std::string& name) {
    return name == "chernoff" ? ae::CiMethod::chernoff : ae::CiMethod::clopper_pearson;
}

// write rows to --out when given, otherwise to stdout
template <typename WriteFn>
void emit(const std::string& out_path, WriteFn write) {
    if (out_path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + out_path);
    write(file);
}

const CLI::Range kAmplitudeRange{0.0, 1.0};
const CLI::Range kAlphaRange{1e-12, 1.0 - 1e-12};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"amplitude-estimation benchmark harness"};
    app.require_subcommand(1);

    const double eps_limit = std::numbers::pi / 8.0;
    std::string algo_name = "iqae";
    std::string ci_name = "cp";
    std::string out_path;
    double a = 0.5;
    double epsilon = 1e-3;
    double alpha = 0.05;
    double ratio = 2.0;
    std::uint64_t shots = 100;
    std::uint64_t seed = 1;
    std::uint64_t reps = 1;
    int m = 5;

    CLI::App* run = app.add_subcommand("run", "single estimation run, one csv row");
    run->add_option("--algo", algo_name, "algorithm")
        ->check(CLI::IsMember({"iqae", "mlae", "qae", "mc"}));
    run->add_option("--a", a, "true amplitude")->check(kAmplitudeRange);
    run->add_option("--eps", epsilon, "target half-width (iqae)")
        ->check(CLI::Range(1e-9, eps_limit));
    run->add_option("--alpha", alpha, "failure probability")->check(kAlphaRange);
    run->add_option("--shots", shots, "shots per query (samples for mc)")
        ->check(CLI::PositiveNumber);
    run->add_option("--m", m, "schedule depth / ancilla count (mlae, qae)")
        ->check(CLI::Range(1, 24));
    run->add_option("--ci", ci_name, "interval method for iqae")
        ->check(CLI::IsMember({"cp", "chernoff"}));
    run->add_option("--ratio", ratio, "minimum growth factor r")->check(CLI::Range(1.0 + 1e-9, 64.0));
    run->add_option("--seed", seed, "master seed");
    run->add_option("--out", out_path, "csv output file");

    std::vector<double> sweep_a;
    std::vector<double> sweep_eps;
    std::vector<double> sweep_alpha;
    CLI::App* sweep = app.add_subcommand("sweep", "iterative-algorithm grid sweep");
    sweep->add_option("--a", sweep_a, "amplitude grid (default i/20)")
        ->check(kAmplitudeRange);
    sweep->add_option("--eps", sweep_eps, "accuracy grid (default 1e-3 1e-4)")
        ->check(CLI::Range(1e-9, eps_limit));
    sweep->add_option("--alpha", sweep_alpha, "alpha grid (default 0.01 0.05 0.1)")
        ->check(kAlphaRange);
    sweep->add_option("--shots", shots, "shots per iteration")->check(CLI::PositiveNumber);
    sweep->add_option("--reps", reps, "repetitions per grid point")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--ci", ci_name, "interval method")
        ->check(CLI::IsMember({"cp", "chernoff"}));
    sweep->add_option("--ratio", ratio, "minimum growth factor r")
        ->check(CLI::Range(1.0 + 1e-9, 64.0));
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--out", out_path, "csv output file");

    CLI::App* kschedule = app.add_subcommand("kschedule", "growth-factor statistics");
    kschedule->add_option("--a", a, "true amplitude")->check(kAmplitudeRange);
    kschedule->add_option("--eps", epsilon, "target half-width")
        ->check(CLI::Range(1e-9, eps_limit));
    kschedule->add_option("--alpha", alpha, "failure probability")->check(kAlphaRange);
    kschedule->add_option("--shots", shots, "shots per iteration")->check(CLI::PositiveNumber);
    kschedule->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
    kschedule->add_option("--ci", ci_name, "interval method")
        ->check(CLI::IsMember({"cp", "chernoff"}));
    kschedule->add_option("--ratio", ratio, "minimum growth factor r")
        ->check(CLI::Range(1.0 + 1e-9, 64.0));
    kschedule->add_option("--seed", seed, "master seed");
    kschedule->add_option("--out", out_path, "csv output file");

    std::vector<std::uint64_t> budgets = {1000, 3000, 10000, 30000, 100000, 300000};
    std::uint64_t seeds_per_budget = 20;
    CLI::App* compare = app.add_subcommand("compare", "error versus oracle budget");
    compare->add_option("--a", a, "true amplitude")->check(kAmplitudeRange);
    compare->add_option("--alpha", alpha, "failure probability")->check(kAlphaRange);
    compare->add_option("--budgets", budgets, "oracle budgets")->check(CLI::PositiveNumber);
    compare->add_option("--seeds", seeds_per_budget, "seeds per budget")
        ->check(CLI::PositiveNumber);
    compare->add_option("--shots", shots, "shots per query")->check(CLI::PositiveNumber);
    compare->add_option("--seed", seed, "master seed");
    compare->add_option("--out", out_path, "csv output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            ae::RunParams params;
            params.algo = *ae::parse_algo(algo_name);
            params.a = a;
            params.epsilon = epsilon;
            params.alpha = alpha;
            params.n_shots = shots;
            params.m = m;
            params.ci_method = parse_ci(ci_name);
            params.min_ratio = ratio;
            const ae::SweepRow row = ae::run_single(params, seed, 0);
            emit(out_path, [&](std::ostream& out) { ae::write_sweep_csv(out, {row}); });
        } else if (sweep->parsed()) {
            ae::SweepSpec spec;
            if (sweep_a.empty())
                for (int i = 0; i <= 20; ++i) sweep_a.push_back(i / 20.0);
            spec.a_values = sweep_a;
            spec.epsilons = sweep_eps.empty() ? std::vector<double>{1e-3, 1e-4} : sweep_eps;
            spec.alphas = sweep_alpha.empty() ? std::vector<double>{0.01, 0.05, 0.1} : sweep_alpha;
            spec.n_shots = shots;
            spec.repetitions = reps;
            spec.ci_method = parse_ci(ci_name);
            spec.min_ratio = ratio;
            spec.seed = seed;
            const ae::SweepResult result = ae::run_sweep(spec);
            emit(out_path, [&](std::ostream& out) { ae::write_sweep_csv(out, result.rows); });
            for (const ae::SweepSummary& s : result.summaries)
                std::cout << "# summary eps=" << ae::format_double(s.epsilon)
                          << " alpha=" << ae::format_double(s.alpha)
                          << " mean_overhead=" << ae::format_double(s.mean_overhead)
                          << " max_overhead=" << ae::format_double(s.max_overhead)
                          << " coverage=" << ae::format_double(s.coverage) << " rows=" << s.rows
                          << '\n';
        } else if (kschedule->parsed()) {
            const ae::KscheduleResult result = ae::run_kschedule(
                a, epsilon, alpha, shots, reps, parse_ci(ci_name), ratio, seed);
            emit(out_path,
                 [&](std::ostream& out) { ae::write_kschedule_csv(out, result); });
            std::cout << "# mean_ratio_after_first_round="
                      << ae::format_double(result.mean_ratio_after_first_round)
                      << " ratio_one_first_round=" << result.ratio_one_first_round << '\n';
        } else if (compare->parsed()) {
            const ae::CompareResult result =
                ae::run_compare(a, alpha, budgets, seeds_per_budget, shots, seed);
            emit(out_path, [&](std::ostream& out) { ae::write_compare_csv(out, result); });
            for (const ae::CompareSlope& s : result.slopes)
                std::cout << "# slope " << s.algorithm << "=" << ae::format_double(s.slope)
                          << '\n';
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}

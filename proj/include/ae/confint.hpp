#pragma once

#include <cstdint>
#include <functional>

namespace ae {

/// Counts from one or more merged Bernoulli measurement rounds.
struct BinomialTally {
    std::uint64_t shots = 0;
    std::uint64_t ones = 0;
};

/// Closed subinterval of [0, 1].
struct Interval01 {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Two-sided Chernoff bound interval: center ones/shots, half-width
/// sqrt(3 ln(2/alpha_round) / shots), clipped to [0, 1]. This inverts the
/// concentration bound 2 exp(-N eps^2 / 3) = alpha_round, deliberately using
/// the constant 3 rather than the tighter Hoeffding form.
Interval01 chernoff_interval(const BinomialTally& tally, double alpha_round);

/// Exact two-sided Clopper-Pearson binomial interval at level 1 - alpha_round.
/// Endpoints are inverse regularized-incomplete-beta quantiles; the boundary
/// tallies (ones = 0 / ones = shots) pin the corresponding endpoint to 0 / 1.
Interval01 clopper_pearson_interval(const BinomialTally& tally, double alpha_round);

/// I_x(a, b) by continued-fraction evaluation, accurate to ~1e-12 over the
/// parameter ranges used here. Monotone nondecreasing in x.
double regularized_incomplete_beta(double x, double a, double b);

/// Inverse of I_x(a, b) in x, by bisection (tolerance 1e-12, cap 200 steps).
double beta_quantile(double p, double a, double b);

/// Standard normal quantile, root-find on erf.
double normal_quantile(double p);

/// Quantile of the chi-squared distribution with one degree of freedom,
/// computed as the square of the (1+p)/2 normal quantile.
double chi2_quantile_1dof(double p);

/// Result of a likelihood-ratio level-set search. The flags report that the
/// level set reached the corresponding domain boundary (endpoint clamped).
struct LevelSetInterval {
    Interval01 interval;
    bool lo_at_boundary = false;
    bool hi_at_boundary = false;
};

/// Smallest interval containing { a' in domain : loglik(a') >= loglik(a_hat)
/// - chi2_quantile_1dof(1 - alpha) / 2 }. The level crossings are bracketed
/// on a uniform scan of grid_n steps and refined by bisection to 1e-10. For
/// a multimodal loglik this is the connected hull of the level set, which is
/// conservative by construction.
LevelSetInterval likelihood_ratio_interval(const std::function<double(double)>& loglik,
                                           double a_hat,
                                           double alpha,
                                           const Interval01& domain,
                                           std::size_t grid_n);

}  // namespace ae

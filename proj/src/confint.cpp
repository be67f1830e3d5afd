#include "ae/confint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ae {

namespace {

void check_tally(const BinomialTally& tally) {
    if (tally.shots == 0) throw std::invalid_argument("tally must have at least one shot");
    if (tally.ones > tally.shots) throw std::invalid_argument("tally has more ones than shots");
}

void check_level(double alpha_round) {
    if (!(alpha_round > 0.0 && alpha_round < 1.0))
        throw std::invalid_argument("alpha_round must lie in (0, 1)");
}

// Continued fraction for the incomplete beta function, modified Lentz scheme.
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    // Large symmetric parameters near the switch point converge slowly; the
    // cap covers shot counts up to ~1e7.
    for (int m = 1; m <= 6000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta argument must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double beta_quantile(double p, double a, double b) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_incomplete_beta(mid, a, b) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Interval01 chernoff_interval(const BinomialTally& tally, double alpha_round) {
    check_tally(tally);
    check_level(alpha_round);
    const double center = static_cast<double>(tally.ones) / static_cast<double>(tally.shots);
    const double half_width =
        std::sqrt(3.0 * std::log(2.0 / alpha_round) / static_cast<double>(tally.shots));
    return {std::max(0.0, center - half_width), std::min(1.0, center + half_width)};
}

Interval01 clopper_pearson_interval(const BinomialTally& tally, double alpha_round) {
    check_tally(tally);
    check_level(alpha_round);
    const double n = static_cast<double>(tally.shots);
    const double x = static_cast<double>(tally.ones);
    const double lo =
        tally.ones == 0 ? 0.0 : beta_quantile(alpha_round / 2.0, x, n - x + 1.0);
    const double hi =
        tally.ones == tally.shots ? 1.0 : beta_quantile(1.0 - alpha_round / 2.0, x + 1.0, n - x);
    return {lo, hi};
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal quantile needs p in (0, 1)");
    const double sqrt2 = std::sqrt(2.0);
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = 0.5 * (1.0 + std::erf(mid / sqrt2));
        if (cdf < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double chi2_quantile_1dof(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chi2 quantile needs p in (0, 1)");
    const double z = normal_quantile(0.5 * (1.0 + p));
    return z * z;
}

LevelSetInterval likelihood_ratio_interval(const std::function<double(double)>& loglik,
                                           double a_hat, double alpha,
                                           const Interval01& domain, std::size_t grid_n) {
    if (grid_n == 0) throw std::invalid_argument("grid_n must be positive");
    if (!(domain.lo <= a_hat && a_hat <= domain.hi))
        throw std::invalid_argument("a_hat must lie inside the domain");
    const double l_hat = loglik(a_hat);
    if (!std::isfinite(l_hat)) throw std::invalid_argument("loglik must be finite at a_hat");
    const double threshold = l_hat - 0.5 * chi2_quantile_1dof(1.0 - alpha);

    const double step = domain.width() / static_cast<double>(grid_n);
    std::vector<double> values(grid_n + 1);
    std::size_t first = grid_n + 1;
    std::size_t last = grid_n + 1;
    for (std::size_t i = 0; i <= grid_n; ++i) {
        const double x = domain.lo + step * static_cast<double>(i);
        values[i] = loglik(x);
        if (values[i] >= threshold) {
            if (first == grid_n + 1) first = i;
            last = i;
        }
    }
    if (first == grid_n + 1) {
        // Level set narrower than the grid; it still contains a_hat.
        return {{a_hat, a_hat}, false, false};
    }

    const auto refine = [&](double below, double above) {
        // bisect the crossing between a sub-threshold and a super-threshold point
        while (std::fabs(above - below) > 1e-10) {
            const double mid = 0.5 * (below + above);
            if (loglik(mid) >= threshold)
                above = mid;
            else
                below = mid;
        }
        return above;
    };

    LevelSetInterval out;
    if (first == 0) {
        out.interval.lo = domain.lo;
        out.lo_at_boundary = true;
    } else {
        out.interval.lo = refine(domain.lo + step * static_cast<double>(first - 1),
                                 domain.lo + step * static_cast<double>(first));
    }
    if (last == grid_n) {
        out.interval.hi = domain.hi;
        out.hi_at_boundary = true;
    } else {
        out.interval.hi = refine(domain.lo + step * static_cast<double>(last + 1),
                                 domain.lo + step * static_cast<double>(last));
    }
    out.interval.lo = std::min(out.interval.lo, a_hat);
    out.interval.hi = std::max(out.interval.hi, a_hat);
    return out;
}

}  // namespace ae

#include "hfsk/marcum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hfsk {

double bessel_i0_scaled(double x) {
    x = std::fabs(x);
    if (x < 15.0) {
        // Power series for I0 times exp(-x); both factors are finite here.
        double term = 1.0, sum = 1.0;
        const double q = x * x / 4.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return sum * std::exp(-x);
    }
    // Asymptotic expansion I0(x) ~ e^x/sqrt(2 pi x) * sum ((2k-1)!!)^2/(k! 8^k x^k).
    double sum = 1.0, term = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double num = (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= num / (8.0 * k * x);
        sum += term;
        if (term < 1e-17) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double marcum_q1(double v, double w) {
    if (v < 0.0 || w < 0.0 || !std::isfinite(v) || !std::isfinite(w))
        throw std::invalid_argument("marcum_q1: arguments must be finite and nonnegative");
    if (w == 0.0) return 1.0;
    if (v == 0.0) return std::exp(-0.5 * w * w);
    // Rice(v,1) concentrates within a few units of v; past a 40-sigma gap
    // the tail is below 1e-300 and the series would only churn.
    if (v - w >= 40.0) return 1.0;
    if (w - v >= 40.0) return 0.0;

    // Q1(v,w) = sum_k Pois(k; x) * P(chi2_{2k+2} > w^2), x = v^2/2, y = w^2/2,
    // with P(chi2_{2k+2} > w^2) = e^{-y} sum_{j<=k} y^j/j!.
    const double x = 0.5 * v * v;
    const double y = 0.5 * w * w;

    // Start the Poisson sweep near its mode to keep terms representable for
    // large x; accumulate left of the mode with the same recurrences.
    const long k0 = static_cast<long>(x);
    const long kmax = k0 + 60 + static_cast<long>(8.0 * std::sqrt(x + 1.0));

    // log Pois(k0; x) via lgamma, then recurrences in both directions.
    const double log_p0 = -x + k0 * std::log(x) - std::lgamma(static_cast<double>(k0) + 1.0);
    // Regularized lower chi-square piece c_k = e^{-y} sum_{j<=k} y^j / j!.
    // Compute c_{k0} by the same mode-centred trick.
    auto log_pois = [](double lam, long k) {
        return -lam + k * std::log(lam) - std::lgamma(static_cast<double>(k) + 1.0);
    };
    // c_k = P(Pois(y) <= k); build it incrementally from the terms of Pois(y).
    auto pois_cdf = [&](long k) {
        if (k < 0) return 0.0;
        // Sum the y-Poisson pmf from its mode outward over 0..k.
        double cdf = 0.0;
        const long m = std::max(0l, std::min(k, static_cast<long>(y)));
        double t = std::exp(log_pois(y, m));
        double tm = t;
        for (long j = m; j >= 0; --j) { // downward
            cdf += tm;
            if (tm < 1e-18 * (cdf + 1e-300)) break;
            tm *= static_cast<double>(j) / y;
        }
        double tp = t;
        for (long j = m + 1; j <= k; ++j) { // upward
            tp *= y / static_cast<double>(j);
            cdf += tp;
            if (tp < 1e-18 * cdf) break;
        }
        return std::min(cdf, 1.0);
    };

    double sum = 0.0;
    // Upward from the mode.
    {
        double p = std::exp(log_p0);
        double c = pois_cdf(k0);
        double cond_term = std::exp(log_pois(y, k0));
        for (long k = k0; k <= kmax; ++k) {
            if (k > k0) {
                p *= x / static_cast<double>(k);
                cond_term *= y / static_cast<double>(k);
                c = std::min(c + cond_term, 1.0);
            }
            sum += p * c;
            if (p < 1e-18 && k > k0 + 4) break;
        }
    }
    // Downward from the mode.
    if (k0 > 0) {
        double p = std::exp(log_p0);
        double c = pois_cdf(k0);
        double cond_term = std::exp(log_pois(y, k0));
        for (long k = k0 - 1; k >= 0; --k) {
            p *= static_cast<double>(k + 1) / x;
            c -= cond_term;
            cond_term *= static_cast<double>(k + 1) / y;
            if (c < 0.0) c = 0.0;
            sum += p * c;
            if (p < 1e-18) break;
        }
    }
    if (sum < 0.0) return 0.0;
    return sum > 1.0 ? 1.0 : sum;
}

namespace {

double q1_integrand(double x, double v) {
    // x * exp(-(x-v)^2/2) * [e^{-vx} I0(vx)]
    const double d = x - v;
    return x * std::exp(-0.5 * d * d) * bessel_i0_scaled(v * x);
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double tol, double v,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = q1_integrand(lm, v), frm = q1_integrand(rm, v);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(a, m, fa, flm, fm, left, 0.5 * tol, v, depth - 1) +
           adaptive(m, b, fm, frm, fb, right, 0.5 * tol, v, depth - 1);
}

} // namespace

double marcum_q1_quadrature(double v, double w, double tol) {
    if (v < 0.0 || w < 0.0) throw std::invalid_argument("marcum_q1_quadrature: negative argument");
    // Integrand is negligible past the Rice bulk.
    const double upper = std::max(v, w) + 12.0;
    if (w >= upper) return 0.0;
    const double a = w, b = upper;
    const double m = 0.5 * (a + b);
    const double fa = q1_integrand(a, v), fm = q1_integrand(m, v), fb = q1_integrand(b, v);
    const double whole = simpson(a, b, fa, fm, fb);
    const double val = adaptive(a, b, fa, fm, fb, whole, tol, v, 48);
    if (val < 0.0) return 0.0;
    return val > 1.0 ? 1.0 : val;
}

} // namespace hfsk

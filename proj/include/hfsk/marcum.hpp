#pragma once

namespace hfsk {

// First-order Marcum Q, the Rice tail probability P(X >= w) for X ~
// Rice(v, 1). Noncentral chi-square tail series with term-ratio stopping;
// absolute error below 1e-12 on the reachable domain, saturating to {0,1}
// where the series is numerically irrelevant.
double marcum_q1(double v, double w);

// Independent route: adaptive Simpson quadrature of the defining integral
// of Q1 using an exponentially scaled Bessel I0. Used by validation and the
// special-function cross-check tests, never by the analysis path.
double marcum_q1_quadrature(double v, double w, double tol = 1e-12);

// exp(-x) * I0(x), stable for large x.
double bessel_i0_scaled(double x);

} // namespace hfsk

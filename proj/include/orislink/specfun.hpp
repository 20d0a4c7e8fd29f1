#pragma once

// Real-argument special functions used by the link formulas.
//
// Everything here is pure and reentrant.

namespace orislink::specfun {

/// Series control for the Bessel and Marcum-Q sums.
struct EvalTolerance {
    double rel_tol = 1e-12;
    int max_terms = 500;

    /// Throws std::invalid_argument unless rel_tol > 0 and max_terms >= 1.
    void check() const;
};

double erf(double x);
double erfc(double x);

/// log(erfc(x)), finite for every finite x (no underflow for large x).
double log_erfc(double x);

/// Modified Bessel function of the first kind, I_order(x), x >= 0.
/// Throws std::overflow_error when the result is not representable.
double bessel_i(int order, double x, const EvalTolerance& tol = {});

/// exp(-x) * I_order(x); finite for all x >= 0.
double bessel_i_scaled(int order, double x, const EvalTolerance& tol = {});

/// First-order Marcum Q-function Q_1(a, b) for a, b >= 0.
double marcum_q1(double a, double b, const EvalTolerance& tol = {});

/// 1 - Q_1(a, b), accurate when Q_1 is close to one.
double marcum_q1_complement(double a, double b, const EvalTolerance& tol = {});

/// Gaussian tail probability Q(x) = P[N(0,1) > x].
double gauss_q(double x);

/// Gamma function. Throws std::domain_error at the poles (x <= 0 integer).
double gamma_fn(double x);

}  // namespace orislink::specfun

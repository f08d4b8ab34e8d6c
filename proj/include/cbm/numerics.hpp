#pragma once

#include <functional>
#include <vector>

namespace cbm {

/// Accuracy targets for adaptive quadrature.
struct ToleranceConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;
};

/// Algebraic behaviour of an integrand at the ends of its range: near `a` it
/// behaves like (x - a)^(left - 1), near `b` like (b - x)^(right - 1).
/// Exponents in (0, 2] other than 1 trigger the substitution
/// x = a + v^(1/left) (resp. x = b - v^(1/right)) on that half of the range,
/// which turns the leading behaviour into a constant. 1 means "regular".
struct EndpointExponents {
    double left = 1.0;
    double right = 1.0;
};

double log_gamma(double x);

/// P(shape, x) = gamma(shape, x) / Gamma(shape).
///
/// Series for x < shape + 1, Lentz continued fraction for the complement
/// otherwise. The common prefactor x^shape e^-x / Gamma(shape) is formed in
/// log space so that shapes around 30 with x around 1e-3 still resolve to
/// their (tiny) value instead of 0/0.
double regularized_lower_gamma(double shape, double x);

/// regularized_lower_gamma with the shape fixed, for repeated evaluation.
class LowerGammaP {
public:
    explicit LowerGammaP(double shape);
    double operator()(double x) const;

private:
    double shape_;
    double log_gamma_;
    double log_gamma_plus_one_;
};

/// CDF of a gamma law with the given shape and rate (mean shape / rate).
/// shape == 0 is the point mass at zero.
double gamma_cdf(double x, double shape, double rate);

/// Gamma density; zero for x <= 0.
double gamma_pdf(double x, double shape, double rate);

double std_normal_cdf(double z);

/// Globally adaptive Gauss-Kronrod (10/21) quadrature of f over [a, b].
///
/// Intervals are bisected in order of their error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Throws
/// ConvergenceError if that takes more than tol.max_subdivisions bisections.
IntegrationResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                     const ToleranceConfig& tol = {}, EndpointExponents ends = {});

/// Poisson(mean) probabilities for m = 0..M, where M is the smallest count
/// whose upper tail 1 - CDF(M) is below tail_eps. Throws TruncationError if M
/// would exceed cap.
std::vector<double> poisson_weights(double mean, double tail_eps, int cap);

}  // namespace cbm

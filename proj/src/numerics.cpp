#include "cbm/numerics.hpp"

#include <math.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "cbm/errors.hpp"

namespace cbm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSeriesTerms = 100000;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208175491250, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for kKronrodNodes[1], [3], [5], [7], [9].
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    int piece;
    double lo;
    double hi;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, int piece, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double value = kronrod * half;
    const double res_abs = abs_sum * std::abs(half);
    const double res_asc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * res_abs, err);
    }
    if (!std::isfinite(value)) {
        throw DomainError("adaptive_integrate: integrand is not finite on [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
    return {piece, lo, hi, value, err};
}

bool needs_substitution(double exponent) {
    return exponent > 0.0 && exponent <= 2.0 && exponent != 1.0;
}

double lower_gamma_series(double a, double x, double log_gamma_a1) {
    // x^a e^-x / Gamma(a + 1) * sum_n x^n / ((a + 1)...(a + n))
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kMaxSeriesTerms; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < sum * kEps) {
            const double log_prefix = a * std::log(x) - x - log_gamma_a1;
            return std::min(1.0, std::exp(log_prefix) * sum);
        }
    }
    throw ConvergenceError("regularized_lower_gamma: series did not converge");
}

double upper_gamma_continued_fraction(double a, double x, double log_gamma_a) {
    // Modified Lentz evaluation of the continued fraction for Q(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            const double log_prefix = a * std::log(x) - x - log_gamma_a;
            return std::exp(log_prefix) * h;
        }
    }
    throw ConvergenceError("regularized_lower_gamma: continued fraction did not converge");
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("ToleranceConfig: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw DomainError("ToleranceConfig: abs_tol must be > 0");
    if (max_subdivisions < 1) throw DomainError("ToleranceConfig: max_subdivisions must be >= 1");
}

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("log_gamma: argument must be finite and positive, got " + std::to_string(x));
    }
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
    return std::lgamma(x);
#endif
}

double regularized_lower_gamma(double shape, double x) {
    if (!(shape > 0.0) || std::isnan(shape)) {
        throw DomainError("regularized_lower_gamma: shape must be positive");
    }
    return LowerGammaP(shape)(x);
}

LowerGammaP::LowerGammaP(double shape) : shape_(shape) {
    if (!(shape > 0.0) || std::isinf(shape)) throw DomainError("regularized_lower_gamma: shape must be positive");
    log_gamma_ = log_gamma(shape);
    log_gamma_plus_one_ = log_gamma(shape + 1.0);
}

double LowerGammaP::operator()(double x) const {
    if (!(x >= 0.0)) throw DomainError("regularized_lower_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < shape_ + 1.0) return lower_gamma_series(shape_, x, log_gamma_plus_one_);
    return std::max(0.0, 1.0 - upper_gamma_continued_fraction(shape_, x, log_gamma_));
}

double gamma_cdf(double x, double shape, double rate) {
    if (!(x >= 0.0)) throw DomainError("gamma_cdf: x must be nonnegative");
    if (!(rate > 0.0)) throw DomainError("gamma_cdf: rate must be positive");
    if (!(shape >= 0.0)) throw DomainError("gamma_cdf: shape must be nonnegative");
    if (shape == 0.0) return 1.0;
    return regularized_lower_gamma(shape, rate * x);
}

double gamma_pdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("gamma_pdf: shape and rate must be positive");
    if (x <= 0.0) return 0.0;
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x - log_gamma(shape));
}

double std_normal_cdf(double z) {
    if (!std::isfinite(z)) throw DomainError("std_normal_cdf: argument must be finite");
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

IntegrationResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                     const ToleranceConfig& tol, EndpointExponents ends) {
    tol.validate();
    if (!(a <= b)) throw DomainError("adaptive_integrate: requires a <= b");
    if (a == b) return {};

    struct Piece {
        std::function<double(double)> g;
        double lo;
        double hi;
    };
    std::vector<Piece> pieces;
    const bool sub_left = needs_substitution(ends.left);
    const bool sub_right = needs_substitution(ends.right);
    if (!sub_left && !sub_right) {
        pieces.push_back({f, a, b});
    } else {
        const double mid = a + 0.5 * (b - a);
        if (sub_left) {
            const double p = ends.left;
            pieces.push_back({[&f, a, p](double v) {
                                  return f(a + std::pow(v, 1.0 / p)) * std::pow(v, 1.0 / p - 1.0) / p;
                              },
                              0.0, std::pow(mid - a, p)});
        } else {
            pieces.push_back({f, a, mid});
        }
        if (sub_right) {
            const double p = ends.right;
            pieces.push_back({[&f, b, p](double v) {
                                  return f(b - std::pow(v, 1.0 / p)) * std::pow(v, 1.0 / p - 1.0) / p;
                              },
                              0.0, std::pow(b - mid, p)});
        } else {
            pieces.push_back({f, mid, b});
        }
    }

    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
        Segment s = gauss_kronrod(pieces[i].g, i, pieces[i].lo, pieces[i].hi);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    int subdivisions = 0;
    while (total_err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
        if (subdivisions >= tol.max_subdivisions) {
            throw ConvergenceError("adaptive_integrate: tolerance not met after " +
                                   std::to_string(subdivisions) + " subdivisions (error estimate " +
                                   std::to_string(total_err) + ")");
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw ConvergenceError("adaptive_integrate: interval cannot be subdivided further");
        }
        const auto& g = pieces[worst.piece].g;
        Segment left = gauss_kronrod(g, worst.piece, worst.lo, mid);
        Segment right = gauss_kronrod(g, worst.piece, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the leaves to shed the drift of incremental updates.
    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err, subdivisions};
}

std::vector<double> poisson_weights(double mean, double tail_eps, int cap) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("poisson_weights: mean must be finite and >= 0");
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw DomainError("poisson_weights: tail_eps must lie in (0, 1)");
    std::vector<double> w;
    if (mean == 0.0) {
        w.push_back(1.0);
        return w;
    }
    const double log_mean = std::log(mean);
    double cumulative = 0.0;
    for (int m = 0;; ++m) {
        if (m > cap) {
            throw TruncationError("Poisson series for mean " + std::to_string(mean) +
                                  " needs more than m_max_cap = " + std::to_string(cap) + " terms");
        }
        const double p = std::exp(m * log_mean - mean - log_gamma(m + 1.0));
        w.push_back(p);
        cumulative += p;
        // Upper tail beyond m; cumulative stays a lower bound on the CDF.
        if (1.0 - cumulative < tail_eps) return w;
    }
}

}  // namespace cbm

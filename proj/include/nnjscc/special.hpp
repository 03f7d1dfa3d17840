#pragma once

// Scalar special functions backing the analytic and non-excess-distortion
// computations: Gaussian tail and inverse, regularized incomplete beta and
// gamma (linear and log forms), noncentral chi-square CDF, and the
// hyperspherical cap probability. Log forms stay usable far below the
// double underflow threshold of the linear values.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "nnjscc/errors.hpp"

namespace nnjscc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Standard normal upper tail Q(x).
inline double qfunc(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440084436210485); }

inline double normal_pdf(double x) {
    return 0.39894228040143267793994605993438 * std::exp(-0.5 * x * x);
}

// Inverse of Q. Acklam's rational approximation for the normal quantile,
// refined by two Newton steps on erfc; absolute error well below 1e-10.
inline double qfunc_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("qfunc_inv: p must lie in (0,1)");
    static constexpr double a1 = -39.69683028665376, a2 = 220.9460984245205,
                            a3 = -275.9285104469687, a4 = 138.3577518672690,
                            a5 = -30.66479806614716, a6 = 2.506628277459239;
    static constexpr double b1 = -54.47609879822406, b2 = 161.5858368580409,
                            b3 = -155.6989798598866, b4 = 66.80131188771972,
                            b5 = -13.28068155288572;
    static constexpr double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                            c3 = -2.400758277161838, c4 = -2.549732539343734,
                            c5 = 4.374664141464968, c6 = 2.938163982698783;
    static constexpr double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                            d3 = 2.445134137142996, d4 = 3.754408661907416;
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
            ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
    } else if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
            ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
    } else {
        double q = p - 0.5, r = q * q;
        x = (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
            (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1.0);
    }
    x = -x;  // Acklam gives the lower quantile; Q-inverse is its negation
    for (int it = 0; it < 2; ++it) {
        double f = qfunc(x) - p;
        double d = normal_pdf(x);
        if (d > 0.0) x += f / d;
    }
    return x;
}

namespace detail {

inline double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Lentz continued fraction for the incomplete beta (Numerical Recipes form).
inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 3.0e-16, kFpMin = 1.0e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw numerical_error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

// log of the regularized incomplete beta I_x(a,b).
inline double ibeta_log(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("ibeta: a,b must be positive");
    if (x <= 0.0) return kNegInf;
    if (x >= 1.0) return 0.0;
    double lpre = a * std::log(x) + b * std::log1p(-x) - detail::lbeta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return lpre + std::log(detail::betacf(a, b, x) / a);
    }
    double tail = std::exp(lpre) * detail::betacf(b, a, 1.0 - x) / b;
    return std::log1p(-tail);
}

inline double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::exp(ibeta_log(a, b, x));
}

// log of the regularized lower incomplete gamma P(a,x).
inline double gammp_log(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gammp: a must be positive");
    if (x <= 0.0) return kNegInf;
    if (x < a + 1.0) {
        // series around the left endpoint
        double sum = 1.0, term = 1.0;
        double ap = a;
        for (int n = 0; n < 10000; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-17)
                return a * std::log(x) - x - std::lgamma(a + 1.0) + std::log(sum);
        }
        throw numerical_error("incomplete gamma series did not converge");
    }
    // upper-tail continued fraction, then P = 1 - Q
    constexpr double kFpMin = 1.0e-300;
    double b = x + 1.0 - a, c = 1.0 / kFpMin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 3e-16) {
            double q = std::exp(a * std::log(x) - x - std::lgamma(a)) * h;
            return std::log1p(-q);
        }
    }
    throw numerical_error("incomplete gamma continued fraction did not converge");
}

inline double gammp(double a, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(gammp_log(a, x));
}

// log CDF of the noncentral chi-square with `df` degrees of freedom and
// noncentrality `nc`, via the Poisson mixture of central chi-squares.
// The mixture is expanded outward from the modal Poisson index so that
// weights never underflow; truncation leaves a Poisson tail below 1e-12
// and a relative contribution below ~1e-18 of the accumulated sum.
inline double ncx2_cdf_log(double df, double nc, double x) {
    if (!(df > 0.0)) throw std::domain_error("ncx2: df must be positive");
    if (nc < 0.0) throw std::domain_error("ncx2: noncentrality must be nonnegative");
    if (x <= 0.0) return kNegInf;
    const double lam = 0.5 * nc;
    if (lam == 0.0) return gammp_log(0.5 * df, 0.5 * x);

    const double llam = std::log(lam);
    const std::uint64_t j0 = static_cast<std::uint64_t>(lam);
    auto lpois = [&](std::uint64_t j) {
        return static_cast<double>(j) * llam - lam - std::lgamma(static_cast<double>(j) + 1.0);
    };
    double lse = kNegInf;   // running log-sum of terms
    double mass = 0.0;      // accumulated linear Poisson mass
    auto add = [&](std::uint64_t j, double lw) {
        double term = lw + gammp_log(0.5 * df + static_cast<double>(j), 0.5 * x);
        if (term > lse) {
            lse = term + std::log1p(std::exp(lse - term));
        } else if (term != kNegInf) {
            lse += std::log1p(std::exp(term - lse));
        }
        mass += std::exp(lw);
        return term;
    };

    // downward from the mode (bounded by j = 0)
    double lw = lpois(j0);
    const double lw_peak = lw;
    add(j0, lw);
    double lwd = lw;
    for (std::uint64_t j = j0; j-- > 0;) {
        lwd += std::log(static_cast<double>(j) + 1.0) - llam;
        if (lwd < lw_peak - 60.0) break;  // weights are unimodal; the rest is < e^-60
        add(j, lwd);
    }
    // upward
    double lwu = lw;
    for (std::uint64_t j = j0 + 1; j < j0 + 1000000; ++j) {
        lwu += llam - std::log(static_cast<double>(j));
        double term = add(j, lwu);
        bool tail_small = (1.0 - mass) < 1e-12;
        bool term_small = term < lse - 41.5 || term == kNegInf;
        if (j > j0 + 3 && tail_small && term_small) return lse;
    }
    throw numerical_error("noncentral chi-square mixture did not converge within the iteration cap");
}

inline double ncx2_cdf(double df, double nc, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(ncx2_cdf_log(df, nc, x));
}

// P(U >= t) where U is the first coordinate of a uniformly random direction
// in R^dim: the relative area of the hyperspherical cap with cosine t.
inline double sphere_cap_tail(int dim, double t) {
    if (dim < 1) throw std::domain_error("sphere_cap_tail: dim must be >= 1");
    if (dim == 1) {
        if (t <= -1.0) return 1.0;
        return t <= 1.0 ? 0.5 : 0.0;
    }
    if (t >= 1.0) return 0.0;
    if (t <= -1.0) return 1.0;
    double v = 0.5 * ibeta(0.5 * (dim - 1), 0.5, 1.0 - t * t);
    return t >= 0.0 ? v : 1.0 - v;
}

inline double sphere_cap_tail_log(int dim, double t) {
    if (dim < 1) throw std::domain_error("sphere_cap_tail: dim must be >= 1");
    if (dim == 1) {
        if (t <= -1.0) return 0.0;
        return t <= 1.0 ? std::log(0.5) : kNegInf;
    }
    if (t >= 1.0) return kNegInf;
    if (t <= -1.0) return 0.0;
    if (t >= 0.0)
        return std::log(0.5) + ibeta_log(0.5 * (dim - 1), 0.5, 1.0 - t * t);
    return std::log1p(-0.5 * ibeta(0.5 * (dim - 1), 0.5, 1.0 - t * t));
}

}  // namespace nnjscc

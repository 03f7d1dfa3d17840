#pragma once

// Non-excess-distortion probabilities Psi(k, p): the chance that one random
// codeword reproduces a power-p source sequence within distortion D.
// The spherical value is exact through the hyperspherical-cap formula, the
// i.i.d. value exact through the noncentral chi-square CDF; the classical
// exponential bounds and rate functions accompany them.

#include <cmath>
#include <stdexcept>

#include "nnjscc/errors.hpp"
#include "nnjscc/special.hpp"

namespace nnjscc {

struct PsiContext {
    double sigma2 = 0.0;
    double D = 0.0;
    double r1sq = 0.0;  // (sqrt(sigma2-D) - sqrt(D))^2
    double r2sq = 0.0;  // (sqrt(sigma2-D) + sqrt(D))^2
};

inline PsiContext make_psi_context(double sigma2, double D) {
    if (!(sigma2 > 0.0 && D > 0.0 && D < sigma2))
        throw config_error("psi context: need 0 < D < sigma2");
    double c = std::sqrt(sigma2 - D), d = std::sqrt(D);
    return PsiContext{sigma2, D, (c - d) * (c - d), (c + d) * (c + d)};
}

namespace detail {

// Cap cosine for the event d(s, Shat) <= x given ||s||^2/k = p and a
// spherical codeword of per-symbol power sigma2 - D.
inline double cap_cosine(double p, double c2, double x) {
    return (p + c2 - x) / (2.0 * std::sqrt(p * c2));
}

}  // namespace detail

// Exact P{d(s, Shat) <= x} for a spherical codeword, any threshold x.
inline double psi_sp_at(std::size_t k, double p, const PsiContext& ctx, double x) {
    double c2 = ctx.sigma2 - ctx.D;
    if (p <= 0.0) return c2 <= x ? 1.0 : 0.0;
    return sphere_cap_tail(static_cast<int>(k), detail::cap_cosine(p, c2, x));
}

inline double psi_sp_at_log(std::size_t k, double p, const PsiContext& ctx, double x) {
    double c2 = ctx.sigma2 - ctx.D;
    if (p <= 0.0) return c2 <= x ? 0.0 : kNegInf;
    return sphere_cap_tail_log(static_cast<int>(k), detail::cap_cosine(p, c2, x));
}

inline double psi_sp(std::size_t k, double p, const PsiContext& ctx) {
    if (k < 1) throw std::domain_error("psi_sp: k must be >= 1");
    return psi_sp_at(k, p, ctx, ctx.D);
}

inline double psi_sp_log(std::size_t k, double p, const PsiContext& ctx) {
    if (k < 1) throw std::domain_error("psi_sp: k must be >= 1");
    return psi_sp_at_log(k, p, ctx, ctx.D);
}

// Rate function of the spherical non-excess-distortion exponent.
inline double r_sp(double p, const PsiContext& ctx) {
    if (!(p > ctx.r1sq && p < ctx.r2sq))
        throw std::domain_error("r_sp: p must lie in (r1^2, r2^2)");
    double num = p + ctx.sigma2 - 2.0 * ctx.D;
    double arg = 1.0 - num * num / (4.0 * p * (ctx.sigma2 - ctx.D));
    if (!(arg > 0.0)) throw std::domain_error("r_sp: log argument not positive");
    return -0.5 * std::log(arg);
}

// Exponential lower bound g_low on Psi_sp, valid on p in (r1^2, r2^2).
inline double psi_sp_lower(std::size_t k, double p, const PsiContext& ctx) {
    if (!(p > ctx.r1sq && p < ctx.r2sq))
        throw std::domain_error("psi_sp_lower: p must lie in (r1^2, r2^2)");
    double kk = static_cast<double>(k);
    double lg = std::lgamma(0.5 * (kk + 2.0)) - std::lgamma(0.5 * (kk + 1.0));
    return std::exp(lg - 0.5 * std::log(M_PI) - std::log(kk) - (kk - 1.0) * r_sp(p, ctx));
}

// Exponential upper bound g_up on Psi_sp, valid when additionally p + sigma2 - 2D >= 0.
inline double psi_sp_upper(std::size_t k, double p, const PsiContext& ctx) {
    if (!(p > ctx.r1sq && p < ctx.r2sq))
        throw std::domain_error("psi_sp_upper: p must lie in (r1^2, r2^2)");
    if (p + ctx.sigma2 - 2.0 * ctx.D < 0.0)
        throw std::domain_error("psi_sp_upper: requires p + sigma2 - 2D >= 0");
    double kk = static_cast<double>(k);
    double lg = std::lgamma(0.5 * kk) - std::lgamma(0.5 * (kk - 1.0));
    return std::exp(lg - 0.5 * std::log(M_PI) - (kk - 3.0) * r_sp(p, ctx));
}

// Optimal tilt of the i.i.d. exponent.
inline double s_star(double p, const PsiContext& ctx) {
    if (p < 0.0) throw std::domain_error("s_star: p must be nonnegative");
    double rad = std::sqrt((ctx.sigma2 - ctx.D) * (ctx.sigma2 - ctx.D) + 4.0 * p * ctx.D);
    return std::max(0.0, (ctx.sigma2 - 3.0 * ctx.D + rad) / (4.0 * ctx.D));
}

// Rate function of the i.i.d. non-excess-distortion exponent.
inline double r_iid(double p, const PsiContext& ctx) {
    double s = s_star(p, ctx);
    double c2 = ctx.sigma2 - ctx.D;
    return 0.5 * std::log1p(2.0 * s) + s * p / ((1.0 + 2.0 * s) * c2) - s * ctx.D / c2;
}

inline double kappa(double s, double p, const PsiContext& ctx) {
    if (s < 0.0 || p < 0.0) throw std::domain_error("kappa: s and p must be nonnegative");
    double c2 = ctx.sigma2 - ctx.D;
    double w = c2 * (1.0 + 2.0 * s) + 2.0 * p;
    return w * w / (c2 * (1.0 + 2.0 * s) * (1.0 + 2.0 * s) * (1.0 + 2.0 * s));
}

// Per-symbol variance of the exponentially tilted squared-error under the
// optimal tilt; this is the constant the saddle-point prefactor of Psi_iid
// actually carries.
inline double tilted_variance(double s, double p, const PsiContext& ctx) {
    if (s < 0.0 || p < 0.0) throw std::domain_error("tilted_variance: s and p must be nonnegative");
    double c2 = ctx.sigma2 - ctx.D;
    double w = 1.0 + 2.0 * s;
    return 2.0 * (c2 * w + 2.0 * p) / (c2 * w * w * w);
}

// Exact P{d(s, Shat) <= x} for an i.i.d. Gaussian codeword, any threshold x.
inline double psi_iid_at_log(std::size_t k, double p, const PsiContext& ctx, double x) {
    double c2 = ctx.sigma2 - ctx.D;
    double kk = static_cast<double>(k);
    return ncx2_cdf_log(kk, kk * p / c2, kk * x / c2);
}

inline double psi_iid_at(std::size_t k, double p, const PsiContext& ctx, double x) {
    return std::exp(psi_iid_at_log(k, p, ctx, x));
}

inline double psi_iid(std::size_t k, double p, const PsiContext& ctx) {
    if (k < 1) throw std::domain_error("psi_iid: k must be >= 1");
    if (p < 0.0) throw std::domain_error("psi_iid: p must be nonnegative");
    return psi_iid_at(k, p, ctx, ctx.D);
}

inline double psi_iid_log(std::size_t k, double p, const PsiContext& ctx) {
    if (k < 1) throw std::domain_error("psi_iid: k must be >= 1");
    if (p < 0.0) throw std::domain_error("psi_iid: p must be nonnegative");
    return psi_iid_at_log(k, p, ctx, ctx.D);
}

}  // namespace nnjscc

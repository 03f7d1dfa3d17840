#pragma once

// Closed-form engine: Gaussian capacity / rate-distortion, the mismatched
// dispersion functions, normal-approximation source-length predictions,
// moderate-deviations constants, and the separate-coding comparisons.
// Natural logarithms throughout.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nnjscc/errors.hpp"
#include "nnjscc/model.hpp"
#include "nnjscc/special.hpp"

namespace nnjscc {

inline double capacity(double P) {
    if (P < 0.0) throw std::domain_error("capacity: P must be nonnegative");
    return 0.5 * std::log1p(P);
}

inline double rate_distortion(double sigma2, double D) {
    if (!(sigma2 > 0.0) || !(D > 0.0))
        throw std::domain_error("rate_distortion: sigma2 and D must be positive");
    return std::max(0.5 * std::log(sigma2 / D), 0.0);
}

inline double bandwidth_ratio(double P, double sigma2, double D) {
    double r = rate_distortion(sigma2, D);
    if (r == 0.0) throw std::domain_error("bandwidth_ratio: undefined when R(sigma2,D) = 0");
    return capacity(P) / r;
}

inline double v_source(double zeta_s, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("v_source: sigma2 must be positive");
    if (zeta_s < sigma2 * sigma2)
        throw std::domain_error("v_source: zeta_s must be >= sigma2^2");
    return (zeta_s - sigma2 * sigma2) / (4.0 * sigma2 * sigma2);
}

inline double v_channel(double zeta_c, double P, Codebook kind) {
    if (zeta_c < 1.0) throw std::domain_error("v_channel: zeta_c must be >= 1");
    if (P < 0.0) throw std::domain_error("v_channel: P must be nonnegative");
    double num = kind == Codebook::spherical ? P * P * (zeta_c - 1.0) + 4.0 * P
                                             : P * P * (zeta_c + 1.0) + 4.0 * P;
    return num / (4.0 * (P + 1.0) * (P + 1.0));
}

// Joint dispersion, evaluated through both algebraic routes and cross-checked.
inline double v_joint(double zeta_s, double sigma2, double zeta_c, double P, double D,
                      Codebook kind) {
    if (!(D > 0.0 && D < sigma2)) throw std::domain_error("v_joint: D must lie in (0, sigma2)");
    double C = capacity(P);
    double R = rate_distortion(sigma2, D);
    double vs = v_source(zeta_s, sigma2);
    double vc = v_channel(zeta_c, P, kind);
    double form_a = ((C / R) * vs + vc) / (R * R);
    double form_b = (C * vs + R * vc) / (R * R * R);
    double scale = std::max(std::fabs(form_a), std::fabs(form_b));
    if (scale > 0.0 && std::fabs(form_a - form_b) > 1e-12 * scale)
        throw numerical_error("v_joint: the two algebraic forms disagree beyond 1e-12 relative");
    return form_a;
}

struct DispersionReport {
    double sigma2 = 0.0, zeta_s = 0.0, zeta_c = 0.0, P = 0.0, D = 0.0;
    double capacity = 0.0;         // nats per channel use
    double rate_distortion = 0.0;  // nats per source symbol
    double rho_star = 0.0;
    double v_s = 0.0, v_c_sp = 0.0, v_c_iid = 0.0;
    double v_joint_sp = 0.0, v_joint_iid = 0.0;
    double nu_star_sp = 0.0, nu_star_iid = 0.0;

    double v_joint_of(Codebook ch) const { return ch == Codebook::spherical ? v_joint_sp : v_joint_iid; }
    double v_channel_of(Codebook ch) const { return ch == Codebook::spherical ? v_c_sp : v_c_iid; }
};

inline DispersionReport make_report(const SourceModel& src, const NoiseModel& noise, double P,
                                    double D) {
    DispersionReport r;
    r.sigma2 = src.sigma2();
    r.zeta_s = src.zeta_s();
    r.zeta_c = noise.zeta_c();
    r.P = P;
    r.D = D;
    r.capacity = capacity(P);
    r.rate_distortion = rate_distortion(r.sigma2, D);
    r.rho_star = bandwidth_ratio(P, r.sigma2, D);
    r.v_s = v_source(r.zeta_s, r.sigma2);
    r.v_c_sp = v_channel(r.zeta_c, P, Codebook::spherical);
    r.v_c_iid = v_channel(r.zeta_c, P, Codebook::iid);
    r.v_joint_sp = v_joint(r.zeta_s, r.sigma2, r.zeta_c, P, D, Codebook::spherical);
    r.v_joint_iid = v_joint(r.zeta_s, r.sigma2, r.zeta_c, P, D, Codebook::iid);
    r.nu_star_sp = r.v_joint_sp > 0.0 ? 1.0 / (2.0 * r.v_joint_sp) : 0.0;
    r.nu_star_iid = r.v_joint_iid > 0.0 ? 1.0 / (2.0 * r.v_joint_iid) : 0.0;
    return r;
}

// Normal-approximation prediction of the maximal source length at blocklength
// n and target excess-distortion probability eps (the caller rounds).
inline double second_order_k(double n, double eps, const DispersionReport& r, Codebook ch) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("second_order_k: eps must lie in (0,1)");
    if (!(n >= 1.0)) throw std::domain_error("second_order_k: n must be >= 1");
    return n * r.rho_star - std::sqrt(n * r.v_joint_of(ch)) * qfunc_inv(eps);
}

inline double md_constant(const DispersionReport& r, Codebook ch) {
    double v = r.v_joint_of(ch);
    if (!(v > 0.0)) throw std::domain_error("md_constant: joint dispersion must be positive");
    return 1.0 / (2.0 * v);
}

// Best second-order backoff of a separate source/channel design: minimize
// sqrt(rho* Vs)/R Qinv(e1) + sqrt(Vc)/R Qinv(e - e1) over the error split.
// Golden-section search; the objective is unimodal on (0, eps) for eps < 1/2.
inline double separate_second_order(double eps, const DispersionReport& r, Codebook ch,
                                    double* argmin_eps1 = nullptr) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::domain_error("separate_second_order: eps must lie in (0, 0.5)");
    double cs = std::sqrt(r.rho_star * r.v_s) / r.rate_distortion;
    double cc = std::sqrt(r.v_channel_of(ch)) / r.rate_distortion;
    if (cs == 0.0) {
        if (argmin_eps1) *argmin_eps1 = 0.0;
        return cc * qfunc_inv(eps);
    }
    if (cc == 0.0) {
        if (argmin_eps1) *argmin_eps1 = eps;
        return cs * qfunc_inv(eps);
    }
    auto objective = [&](double e1) { return cs * qfunc_inv(e1) + cc * qfunc_inv(eps - e1); };
    const double gr = 0.61803398874989484820458683436564;
    double lo = eps * 1e-12, hi = eps * (1.0 - 1e-12);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    int it = 0;
    while (hi - lo > 1e-8 * eps && ++it < 400) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    if (it >= 400) throw numerical_error("separate_second_order: search did not converge");
    double e1 = 0.5 * (lo + hi);
    if (argmin_eps1) *argmin_eps1 = e1;
    return objective(e1);
}

// Moderate-deviations constant of the best separate design. The backoff
// budget splits between the source and channel codes; equalizing the two
// exponents gives R^2 / (2 (sqrt(rho* Vs) + sqrt(Vc))^2), which is strictly
// below the joint constant whenever both dispersions are positive.
inline double separate_md(const DispersionReport& r, Codebook ch) {
    double a = r.rho_star * r.v_s;
    double b = r.v_channel_of(ch);
    if (a == 0.0 && b == 0.0)
        throw std::domain_error("separate_md: both dispersions are zero");
    double s = std::sqrt(a) + std::sqrt(b);
    return r.rate_distortion * r.rate_distortion / (2.0 * s * s);
}

}  // namespace nnjscc

#pragma once

// Source and noise models: memoryless distributions together with their
// exact second/fourth/sixth moments. Moments are stored in closed form,
// never estimated, since the dispersion formulas consume exact zeta values.
// Noise models are rescaled at construction so that E[Z^2] = 1.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "nnjscc/errors.hpp"
#include "nnjscc/random.hpp"

namespace nnjscc {

enum class DistKind { gaussian, uniform, laplace, rademacher_scaled, discrete_pmf };

enum class Codebook { spherical, iid };

inline std::string to_string(DistKind k) {
    switch (k) {
        case DistKind::gaussian: return "gaussian";
        case DistKind::uniform: return "uniform";
        case DistKind::laplace: return "laplace";
        case DistKind::rademacher_scaled: return "rademacher_scaled";
        case DistKind::discrete_pmf: return "discrete_pmf";
    }
    return "?";
}

inline std::string to_string(Codebook c) { return c == Codebook::spherical ? "spherical" : "iid"; }

namespace detail {

// A zero-mean-symmetric or discrete distribution with exact raw moments.
struct Distribution {
    DistKind kind{};
    double m2 = 0.0, m4 = 0.0, m6 = 0.0;
    double scale = 0.0;                 // kind-specific scale parameter
    std::vector<double> atoms;          // discrete_pmf only (post-rescaling)
    std::vector<double> probs;
    std::vector<double> cum;            // cumulative probabilities
    std::vector<double> raw_atoms;      // discrete_pmf atoms before rescaling

    double sample(RandomStream& rng) const {
        switch (kind) {
            case DistKind::gaussian:
                return scale * rng.gaussian();
            case DistKind::uniform:
                return scale * (2.0 * rng.uniform01() - 1.0);
            case DistKind::laplace: {
                double u = rng.uniform01() - 0.5;
                return -scale * (u < 0 ? -1.0 : 1.0) * std::log1p(-2.0 * std::fabs(u));
            }
            case DistKind::rademacher_scaled:
                return rng.uniform01() < 0.5 ? -scale : scale;
            case DistKind::discrete_pmf: {
                double u = rng.uniform01();
                for (std::size_t i = 0; i + 1 < cum.size(); ++i)
                    if (u <= cum[i]) return atoms[i];
                return atoms.back();
            }
        }
        return 0.0;
    }
};

inline Distribution make_parametric(DistKind kind, double m2) {
    if (!(m2 > 0.0) || !std::isfinite(m2))
        throw config_error("distribution: second moment must be positive and finite");
    Distribution d;
    d.kind = kind;
    d.m2 = m2;
    switch (kind) {
        case DistKind::gaussian:
            d.scale = std::sqrt(m2);
            d.m4 = 3.0 * m2 * m2;
            d.m6 = 15.0 * m2 * m2 * m2;
            break;
        case DistKind::uniform:
            d.scale = std::sqrt(3.0 * m2);
            d.m4 = 9.0 / 5.0 * m2 * m2;
            d.m6 = 27.0 / 7.0 * m2 * m2 * m2;
            break;
        case DistKind::laplace:
            d.scale = std::sqrt(0.5 * m2);
            d.m4 = 6.0 * m2 * m2;
            d.m6 = 90.0 * m2 * m2 * m2;
            break;
        case DistKind::rademacher_scaled:
            d.scale = std::sqrt(m2);
            d.m4 = m2 * m2;
            d.m6 = m2 * m2 * m2;
            break;
        case DistKind::discrete_pmf:
            throw config_error("discrete_pmf requires explicit atoms and probabilities");
    }
    return d;
}

inline Distribution make_discrete(const std::vector<double>& atoms, const std::vector<double>& probs,
                                  bool rescale_unit_power) {
    if (atoms.empty() || atoms.size() != probs.size())
        throw config_error("discrete_pmf: atoms and probabilities must be nonempty and equal-length");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw config_error("discrete_pmf: invalid probability");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw config_error("discrete_pmf: probabilities must sum to 1");
    Distribution d;
    d.kind = DistKind::discrete_pmf;
    d.raw_atoms = atoms;
    d.atoms = atoms;
    d.probs = probs;
    for (double& p : d.probs) p /= total;
    double m2 = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i])) throw config_error("discrete_pmf: atoms must be finite");
        m2 += d.probs[i] * atoms[i] * atoms[i];
    }
    if (!(m2 > 0.0)) throw config_error("discrete_pmf: second moment must be positive");
    if (rescale_unit_power) {
        double s = 1.0 / std::sqrt(m2);
        for (double& a : d.atoms) a *= s;
        m2 = 1.0;
    }
    d.m2 = m2;
    d.m4 = d.m6 = 0.0;
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        double a2 = d.atoms[i] * d.atoms[i];
        d.m4 += d.probs[i] * a2 * a2;
        d.m6 += d.probs[i] * a2 * a2 * a2;
    }
    d.cum.resize(d.probs.size());
    std::partial_sum(d.probs.begin(), d.probs.end(), d.cum.begin());
    d.cum.back() = 1.0;
    return d;
}

}  // namespace detail

struct SourceModel {
    detail::Distribution dist;
    double sigma2() const { return dist.m2; }
    double zeta_s() const { return dist.m4; }
    double m6() const { return dist.m6; }
};

struct NoiseModel {
    detail::Distribution dist;
    double zeta_c() const { return dist.m4; }
    double m6() const { return dist.m6; }
};

inline SourceModel make_source(DistKind kind, double sigma2) {
    SourceModel m{detail::make_parametric(kind, sigma2)};
    // zeta_s >= sigma2^2 holds for every kind by Cauchy-Schwarz
    return m;
}

inline SourceModel make_discrete_source(const std::vector<double>& atoms,
                                        const std::vector<double>& probs) {
    return SourceModel{detail::make_discrete(atoms, probs, /*rescale=*/false)};
}

inline NoiseModel make_noise(DistKind kind) {
    return NoiseModel{detail::make_parametric(kind, 1.0)};
}

inline NoiseModel make_discrete_noise(const std::vector<double>& atoms,
                                      const std::vector<double>& probs) {
    return NoiseModel{detail::make_discrete(atoms, probs, /*rescale=*/true)};
}

inline std::vector<double> sample_source(const SourceModel& m, std::size_t k, RandomStream& rng) {
    std::vector<double> out(k);
    for (auto& v : out) v = m.dist.sample(rng);
    return out;
}

inline std::vector<double> sample_noise(const NoiseModel& m, std::size_t n, RandomStream& rng) {
    std::vector<double> out(n);
    for (auto& v : out) v = m.dist.sample(rng);
    return out;
}

struct SystemConfig {
    double P = 0.0;       // channel input power
    double D = 0.0;       // distortion level
    std::size_t k = 0;    // source length
    std::size_t n = 0;    // channel uses
    Codebook src_codebook = Codebook::spherical;
    Codebook ch_codebook = Codebook::spherical;
};

inline SystemConfig make_system_config(double P, double D, std::size_t k, std::size_t n,
                                       Codebook src, Codebook ch, double sigma2) {
    if (!(P > 0.0)) throw config_error("system: channel power P must be positive");
    if (!(D > 0.0 && D < sigma2))
        throw config_error("system: distortion D must lie strictly inside (0, sigma2)");
    if (k < 1 || n < 1) throw config_error("system: k and n must be >= 1");
    return SystemConfig{P, D, k, n, src, ch};
}

}  // namespace nnjscc

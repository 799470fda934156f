#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qomax/errors.hpp"
#include "qomax/rng.hpp"

namespace qomax {

// Reward laws are immutable value types; parameters are validated once at
// construction so the samplers can run unchecked.

struct Pareto {
    double scale_c;  // G(x) = C * x^-lambda for x >= C^(1/lambda), else 1
    double lambda;
    Pareto(double c, double l) : scale_c(c), lambda(l) {
        if (!(c > 0.0)) throw std::invalid_argument("Pareto: scale must be positive");
        // lambda <= 1 still samples fine; only the expected maximum needs
        // lambda > 1 and reports UnsupportedTail there.
        if (!(l > 0.0)) throw std::invalid_argument("Pareto: lambda must be positive");
    }
    double floor() const { return std::pow(scale_c, 1.0 / lambda); }
};

struct Exponential {
    double rate;  // G(x) = exp(-rate * x) for x >= 0
    explicit Exponential(double r) : rate(r) {
        if (!(r > 0.0)) throw std::invalid_argument("Exponential: rate must be positive");
    }
};

struct Gaussian {
    double mean;
    double std_dev;
    Gaussian(double m, double s) : mean(m), std_dev(s) {
        if (!(s > 0.0)) throw std::invalid_argument("Gaussian: std must be positive");
    }
};

struct LogNormal {
    double mu;
    double sigma;
    LogNormal(double m, double s) : mu(m), sigma(s) {
        if (!(s > 0.0)) throw std::invalid_argument("LogNormal: sigma must be positive");
    }
};

struct GeneralizedGaussian {
    double beta;  // density proportional to exp(-|x|^beta)
    explicit GeneralizedGaussian(double b) : beta(b) {
        if (!(b > 0.0)) throw std::invalid_argument("GeneralizedGaussian: beta must be positive");
    }
};

struct DiracParetoMixture {
    double zero_prob;  // reward 0 with probability p, else Pareto(1, lambda)
    double lambda;
    DiracParetoMixture(double p, double l) : zero_prob(p), lambda(l) {
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument("DiracParetoMixture: zero_prob must be in [0,1)");
        if (!(l > 0.0)) throw std::invalid_argument("DiracParetoMixture: lambda must be positive");
    }
};

using ArmDistribution = std::variant<Pareto, Exponential, Gaussian, LogNormal,
                                     GeneralizedGaussian, DiracParetoMixture>;

// ---------------------------------------------------------------- sampling

inline double sample(const Pareto& d, Rng& rng) {
    return std::pow(d.scale_c / uniform_open01(rng), 1.0 / d.lambda);
}

inline double sample(const Exponential& d, Rng& rng) {
    return -std::log(uniform_open01(rng)) / d.rate;
}

inline double sample(const Gaussian& d, Rng& rng) {
    return d.mean + d.std_dev * standard_normal(rng);
}

inline double sample(const LogNormal& d, Rng& rng) {
    return std::exp(d.mu + d.sigma * standard_normal(rng));
}

inline double sample(const GeneralizedGaussian& d, Rng& rng) {
    // |X|^beta ~ Gamma(1/beta, 1), sign uniform.
    const double mag = std::pow(standard_gamma(1.0 / d.beta, rng), 1.0 / d.beta);
    return uniform_open01(rng) < 0.5 ? -mag : mag;
}

inline double sample(const DiracParetoMixture& d, Rng& rng) {
    if (uniform_open01(rng) < d.zero_prob) return 0.0;
    return std::pow(1.0 / uniform_open01(rng), 1.0 / d.lambda);
}

inline double sample(const ArmDistribution& dist, Rng& rng) {
    return std::visit([&rng](const auto& d) { return sample(d, rng); }, dist);
}

// ---------------------------------------------------------------- survival

inline double survival(const Pareto& d, double x) {
    if (x <= d.floor()) return 1.0;
    return d.scale_c * std::pow(x, -d.lambda);
}

inline double survival(const Exponential& d, double x) {
    if (x <= 0.0) return 1.0;
    return std::exp(-d.rate * x);
}

inline double survival(const Gaussian& d, double x) {
    return 0.5 * std::erfc((x - d.mean) / (d.std_dev * std::sqrt(2.0)));
}

inline double survival(const LogNormal& d, double x) {
    if (x <= 0.0) return 1.0;
    return 0.5 * std::erfc((std::log(x) - d.mu) / (d.sigma * std::sqrt(2.0)));
}

inline double survival(const GeneralizedGaussian& d, double x) {
    const double half_tail = 0.5 * boost::math::gamma_q(1.0 / d.beta, std::pow(std::abs(x), d.beta));
    return x >= 0.0 ? half_tail : 1.0 - half_tail;
}

inline double survival(const DiracParetoMixture& d, double x) {
    if (x < 0.0) return 1.0;
    const double pareto_part = x <= 1.0 ? 1.0 : std::pow(x, -d.lambda);
    return (1.0 - d.zero_prob) * pareto_part;
}

inline double survival(const ArmDistribution& dist, double x) {
    return std::visit([x](const auto& d) { return survival(d, x); }, dist);
}

// ------------------------------------------------------------ expected max

namespace detail {

// P(max of T draws > x) = 1 - (1 - G(x))^T, evaluated without cancellation.
inline double max_exceed_prob(double g, long long horizon) {
    if (g >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(horizon) * std::log1p(-g));
}

inline double lower_support(const ArmDistribution& dist) {
    if (const auto* p = std::get_if<Pareto>(&dist)) return p->floor();
    if (std::holds_alternative<Exponential>(dist)) return 0.0;
    if (std::holds_alternative<LogNormal>(dist)) return 0.0;
    if (std::holds_alternative<DiracParetoMixture>(dist)) return 0.0;
    return -std::numeric_limits<double>::infinity();
}

}  // namespace detail

// E[max of T draws] by quadrature of P(max > x) over the support. The upper
// tail decays like T*G(x), slowly for lambda near 1, so the integral runs to
// infinity under the double-exponential transform instead of a hard cutoff.
inline double expected_max_numeric(const ArmDistribution& dist, long long horizon) {
    constexpr double tol = 1e-10;
    const double inf = std::numeric_limits<double>::infinity();
    boost::math::quadrature::exp_sinh<double> integrator;
    const double a = detail::lower_support(dist);
    if (std::isfinite(a)) {
        const auto tail = [&](double x) { return detail::max_exceed_prob(survival(dist, x), horizon); };
        return a + integrator.integrate(tail, a, inf, tol);
    }
    const auto upper = [&](double x) { return detail::max_exceed_prob(survival(dist, x), horizon); };
    const auto lower = [&](double y) {
        // P(max <= -y) = (1 - G(-y))^T
        const double g = survival(dist, -y);
        return std::exp(static_cast<double>(horizon) * std::log1p(-g));
    };
    return integrator.integrate(upper, 0.0, inf, tol) - integrator.integrate(lower, 0.0, inf, tol);
}

// Growth of the expected maximum: closed forms for exponential and
// polynomial tails, quadrature for everything else.
inline double expected_max_approx(const ArmDistribution& dist, long long horizon) {
    if (horizon < 1) throw std::invalid_argument("expected_max_approx: horizon must be >= 1");
    if (const auto* e = std::get_if<Exponential>(&dist)) {
        return std::log(static_cast<double>(horizon)) / e->rate;
    }
    if (const auto* p = std::get_if<Pareto>(&dist)) {
        if (p->lambda <= 1.0)
            throw UnsupportedTail("expected_max_approx: Pareto tail needs lambda > 1");
        return std::pow(p->scale_c * static_cast<double>(horizon), 1.0 / p->lambda) *
               std::tgamma(1.0 - 1.0 / p->lambda);
    }
    if (const auto* m = std::get_if<DiracParetoMixture>(&dist)) {
        if (m->lambda <= 1.0)
            throw UnsupportedTail("expected_max_approx: mixture tail needs lambda > 1");
    }
    return expected_max_numeric(dist, horizon);
}

// Quantile level q~ with P(max of T draws <= E[max]) = q~. Used to read the
// expected maximum off an empirical quantile instead of a heavy-tailed mean.
inline double per_quantile(const ArmDistribution& dist, long long horizon) {
    if (std::holds_alternative<Exponential>(dist)) {
        return std::exp(-1.0);
    }
    if (const auto* p = std::get_if<Pareto>(&dist)) {
        if (p->lambda <= 1.0) throw UnsupportedTail("per_quantile: Pareto tail needs lambda > 1");
        return std::exp(-1.0 / std::pow(std::tgamma(1.0 - 1.0 / p->lambda), p->lambda));
    }
    const double expected = expected_max_approx(dist, horizon);
    return std::exp(-static_cast<double>(horizon) * survival(dist, expected));
}

}  // namespace qomax

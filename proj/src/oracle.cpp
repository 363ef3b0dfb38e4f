#include "unruh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace unruh {

namespace {

constexpr double kPi = MathConstants::pi;
const cplx I(0.0, 1.0);
constexpr long kMaxPanels = 2000000;
// Ladder values are measured in units of the integrand's own oscillation rate
// times this factor; it keeps the nearest singularity of the damped integral,
// as a function of eps, at distance 1/kDampScale from the origin.
constexpr double kDampScale = 0.25;

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
// Fixed high-order rule for panels that span about one oscillation.
using GKPanel = boost::math::quadrature::gauss_kronrod<double, 61>;

// Neville evaluation at 0 of the interpolant through (x[i], y[i]) for i in [lo, hi).
cplx neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y, std::size_t lo, std::size_t hi) {
    std::vector<cplx> p(y.begin() + lo, y.begin() + hi);
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            double xi = x[lo + i], xj = x[lo + i + m];
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    return p[0];
}

struct PanelSum {
    cplx sum = 0.0;
    bool complete = true;
};

template <class F, class Step, class Bound>
PanelSum integrate_panels(F&& f, double start, Step&& step, Bound&& tail_bound, const QuadratureConfig& cfg) {
    PanelSum out;
    double lo = start;
    for (long k = 0;; ++k) {
        if (k >= kMaxPanels) {
            out.complete = false;
            break;
        }
        double hi = lo + step(lo);
        if (cfg.t_max > 0.0 && hi >= cfg.t_max) hi = cfg.t_max;
        out.sum += GKPanel::integrate(f, lo, hi, 0);
        lo = hi;
        if (cfg.t_max > 0.0 && lo >= cfg.t_max) break;
        if (tail_bound(lo) < cfg.tail_tol * std::abs(out.sum)) break;
    }
    return out;
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
    if (cfg.epsilon_ladder.size() < 2) throw std::domain_error("epsilon ladder needs at least two rungs");
    for (std::size_t i = 0; i < cfg.epsilon_ladder.size(); ++i) {
        if (!(cfg.epsilon_ladder[i] > 0.0)) throw std::domain_error("epsilon values must be positive");
        if (i > 0 && !(cfg.epsilon_ladder[i] < cfg.epsilon_ladder[i - 1]))
            throw std::domain_error("epsilon ladder must be strictly decreasing");
    }
    if (!(cfg.rel_tol > 0.0)) throw std::domain_error("rel_tol must be positive");
    if (!(cfg.tail_tol > 0.0)) throw std::domain_error("tail_tol must be positive");
    if (cfg.max_subdivisions < 1) throw std::domain_error("max_subdivisions must be at least 1");
}

cplx damped_power_exp_integral(cplx s, double q, double r, bool from_one, double eps, const QuadratureConfig& cfg) {
    if (q == 0.0) throw std::domain_error("power_exp_integral: q must be non-zero");
    if (!from_one && r != 0.0) throw std::domain_error("power_exp_integral: r needs a lower limit of 1");
    const double sigma = (from_one || s.real() > 0.0) ? 0.0 : std::abs(s.imag());
    if (!from_one && s.real() <= 0.0 && sigma == 0.0)
        throw std::domain_error("power_exp_integral: divergent at the origin");

    const double damp = kDampScale * eps * std::abs(q);
    const cplx sd = s + kDampScale * eps * sigma;  // effective exponent with the origin softening
    const cplx c = cplx(-damp, q);    // e^{c x}

    cplx total = 0.0;

    if (!from_one) {
        // x = e^{-w} on (0, 1]:  x^{s-1} dx = e^{-w s} dw
        const double kappa = sd.real();
        auto g = [&](double w) { return std::exp(-w * sd + c * std::exp(-w)); };
        auto step = [&](double w) {
            double rate = std::max({std::abs(sd.imag()), std::abs(q) * std::exp(-w), kappa, 1e-3});
            return 2.0 * kPi / rate;
        };
        auto bound = [&](double w) { return std::exp(-kappa * w) / kappa; };
        PanelSum ps = integrate_panels(g, 0.0, step, bound, cfg);
        if (!ps.complete) throw AccuracyError("power_exp_integral: origin region did not terminate", INFINITY);
        total += ps.sum;
    }

    // [1, inf)
    const double grow = sd.real() - 1.0;
    auto h = [&](double x) { return std::exp((sd - 1.0) * std::log(x) + c * x + I * (r / x)); };
    auto step = [&](double x) {
        double rate = std::max({std::abs(q), std::abs(sd.imag()) / x, std::abs(r) / (x * x), 1e-6});
        return 2.0 * kPi / rate;
    };
    auto bound = [&](double x) { return std::exp(grow * std::log(x) - damp * x) / damp; };
    PanelSum ps = integrate_panels(h, 1.0, step, bound, cfg);
    if (!ps.complete) throw AccuracyError("power_exp_integral: tail did not terminate", INFINITY);
    total += ps.sum;
    return total;
}

AmplitudeResult power_exp_integral(cplx s, double q, const QuadratureConfig& cfg, double r, bool from_one) {
    validate(cfg);
    const auto& eps = cfg.epsilon_ladder;
    std::vector<cplx> vals;
    vals.reserve(eps.size());
    for (double e : eps) vals.push_back(damped_power_exp_integral(s, q, r, from_one, e, cfg));

    AmplitudeResult out;
    out.value = neville_at_zero(eps, vals, 0, eps.size());
    cplx coarser = neville_at_zero(eps, vals, 1, eps.size());
    out.extrapolation_error_estimate = std::abs(out.value - coarser);
    out.converged = out.extrapolation_error_estimate < cfg.rel_tol * std::abs(out.value);
    return out;
}

namespace {

using Key = std::tuple<double, double, double, double, bool>;
using Cache = std::map<Key, AmplitudeResult>;

const AmplitudeResult& cached(Cache& cache, cplx s, double q, double r, bool from_one, const QuadratureConfig& cfg) {
    Key key{s.real(), s.imag(), q, r, from_one};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, power_exp_integral(s, q, cfg, r, from_one)).first->second;
}

// Accumulates coeff * result into an amplitude.
void add(AmplitudeResult& acc, cplx coeff, const AmplitudeResult& term) {
    acc.value += coeff * term.value;
    acc.extrapolation_error_estimate += std::abs(coeff) * term.extrapolation_error_estimate;
}

AmplitudeResult amplitude_of_terms(const std::vector<ModeTerm>& terms, const PhysParams& p, double W,
                                   const QuadratureConfig& cfg, Cache& cache) {
    const double a = p.a;
    AmplitudeResult acc{0.0, 0.0, false};
    for (const auto& t : terms) {
        switch (t.kind) {
            case TermKind::Worldline: {
                const cplx s_u(0.0, W / a), s_ut(0.0, -W / a);
                if (t.rate_ut == 0.0) {
                    add(acc, t.coeff / a, cached(cache, s_u, t.rate_u, 0.0, false, cfg));
                } else if (t.rate_u == 0.0) {
                    add(acc, t.coeff / a, cached(cache, s_ut, t.rate_ut, 0.0, false, cfg));
                } else {
                    // tau < 0 through u = e^{-a tau}, tau > 0 through e^{a tau}
                    add(acc, t.coeff / a, cached(cache, s_u, t.rate_u, t.rate_ut, true, cfg));
                    add(acc, t.coeff / a, cached(cache, s_ut, t.rate_ut, t.rate_u, true, cfg));
                }
                break;
            }
            case TermKind::RindlerLeft: {
                cplx phase = std::exp(-I * (W * p.z0));
                add(acc, t.coeff * phase / a, cached(cache, cplx(1.0, t.power), W / a, 0.0, false, cfg));
                break;
            }
            case TermKind::RindlerRight: {
                cplx phase = std::exp(I * (W * p.z0));
                add(acc, t.coeff * phase / a, cached(cache, cplx(1.0, t.power), -W / a, 0.0, false, cfg));
                break;
            }
        }
    }
    acc.converged = acc.extrapolation_error_estimate < cfg.rel_tol * std::abs(acc.value);
    return acc;
}

std::vector<ModeTerm> with_conjugates(std::vector<ModeTerm> terms) {
    const std::size_t n = terms.size();
    for (std::size_t i = 0; i < n; ++i) terms.push_back(conj(terms[i]));
    return terms;
}

}  // namespace

AmplitudeResult amplitude_vac(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg, bool deexcite) {
    validate(s, p);
    validate(cfg);
    Cache cache;
    return amplitude_of_terms(mode_terms(s, p), p, deexcite ? -p.Omega : p.Omega, cfg, cache);
}

AmplitudeResult amplitude_coherent(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg,
                                   bool deexcite) {
    validate(s, p);
    validate(cfg);
    Cache cache;
    return amplitude_of_terms(with_conjugates(mode_terms(s, p)), p, deexcite ? -p.Omega : p.Omega, cfg, cache);
}

NumericTransition p_numeric(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg) {
    validate(s, p);
    validate(cfg);
    Cache cache;
    const auto terms = mode_terms(s, p);
    const auto both = with_conjugates(terms);

    NumericTransition out;
    out.vac_ex = amplitude_of_terms(terms, p, p.Omega, cfg, cache);
    out.vac_de = amplitude_of_terms(terms, p, -p.Omega, cfg, cache);
    const double vac = p.lambda * p.lambda * p.hbar_f / p.hbar_d;
    out.probabilities.p_vac_ex = vac * std::norm(out.vac_ex.value);
    out.probabilities.p_vac_de = vac * std::norm(out.vac_de.value);

    if (p.alpha_k == 0.0) {
        out.alpha_ex = out.alpha_de = AmplitudeResult{0.0, 0.0, true};
    } else {
        out.alpha_ex = amplitude_of_terms(both, p, p.Omega, cfg, cache);
        out.alpha_de = amplitude_of_terms(both, p, -p.Omega, cfg, cache);
        const double coh = vac * p.alpha_k * p.alpha_k;
        out.probabilities.p_alpha_ex = coh * std::norm(out.alpha_ex.value);
        out.probabilities.p_alpha_de = coh * std::norm(out.alpha_de.value);
    }
    out.converged = out.vac_ex.converged && out.vac_de.converged && out.alpha_ex.converged && out.alpha_de.converged;
    return out;
}

double bessel_oracle(double nu, double x, double z, const QuadratureConfig& cfg) {
    if (!(x > 0.0) || !(z > 0.0)) throw std::domain_error("bessel_oracle: x and z must be positive");
    validate(cfg);
    // t = e^v
    auto f = [&](double v) { return std::exp(cplx(-0.5 * x * (std::exp(v) + z * z * std::exp(-v)), -nu * v)); };
    const double cut = 18.0 * std::log(10.0);
    // exponent below -cut outside [v_lo, v_hi]
    const double v_hi = std::log(2.0 * cut / x + 1.0);
    const double v_lo = -std::log(2.0 * cut / (x * z * z) + 1.0);
    const double panel = nu > 0.0 ? std::min(kPi / nu, v_hi - v_lo) : v_hi - v_lo;

    cplx sum = 0.0;
    double err_sum = 0.0;
    for (double lo = v_lo; lo < v_hi; lo += panel) {
        double hi = std::min(lo + panel, v_hi), err = 0.0;
        sum += GK::integrate(f, lo, hi, cfg.max_subdivisions, 1e-14, &err);
        err_sum += err;
    }
    cplx val = 0.5 * std::exp(I * (nu * std::log(z))) * sum;
    if (err_sum > cfg.rel_tol * std::abs(val))
        throw AccuracyError("bessel_oracle: quadrature did not reach rel_tol", err_sum / std::abs(val));
    return val.real();
}

}  // namespace unruh

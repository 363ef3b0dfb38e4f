#pragma once

#include <vector>

#include "unruh/closedform.hpp"
#include "unruh/modes.hpp"

namespace unruh {

struct QuadratureConfig {
    std::vector<double> epsilon_ladder{0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};
    // Truncation of each half-line in the substituted variable; 0 lets the
    // integrator stop once the damped tail drops below tail_tol of the sum.
    double t_max = 0.0;
    double tail_tol = 1e-16;
    double rel_tol = 1e-6;
    // Bisection depth of the adaptive rule in bessel_oracle.
    int max_subdivisions = 15;
};

void validate(const QuadratureConfig& cfg);

struct AmplitudeResult {
    cplx value;
    double extrapolation_error_estimate = 0.0;
    bool converged = false;
};

// int_{x0}^inf x^{s-1} e^{i q x} e^{i r / x} dx with x0 = 0 (r must be 0) or
// x0 = 1, regularised by e^{-eps |q| x} (and x^{eps |Im s|} at the origin when
// Re s <= 0) and extrapolated to eps = 0 over the ladder.
AmplitudeResult power_exp_integral(cplx s, double q, const QuadratureConfig& cfg, double r = 0.0,
                                   bool from_one = false);

// Single rung of the above at fixed eps.
cplx damped_power_exp_integral(cplx s, double q, double r, bool from_one, double eps, const QuadratureConfig& cfg);

// int dtau e^{-i Omega tau} u(tau), Omega -> -Omega when deexcite is set.
AmplitudeResult amplitude_vac(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg,
                              bool deexcite = false);

// Same with u + u* as integrand.
AmplitudeResult amplitude_coherent(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg,
                                   bool deexcite = false);

struct NumericTransition {
    TransitionResult probabilities;
    AmplitudeResult vac_ex;
    AmplitudeResult vac_de;
    AmplitudeResult alpha_ex;
    AmplitudeResult alpha_de;
    bool converged = false;
};

NumericTransition p_numeric(const ScenarioSpec& s, const PhysParams& p, const QuadratureConfig& cfg = {});

// K_{i nu}(x z) from (z^{i nu}/2) int_0^inf t^{-i nu-1} exp[-(x/2)(t + z^2/t)] dt.
double bessel_oracle(double nu, double x, double z, const QuadratureConfig& cfg = {});

}  // namespace unruh

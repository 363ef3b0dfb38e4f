#pragma once

#include <string>

#include "unruh/closedform.hpp"
#include "unruh/scenario.hpp"

namespace unruh {

// pi in 1+1, 4 pi^3 in 3+1 (c = 1).
double beta_for(Dim dim);

// Replaces (alpha_k, hbar_f) by a point with alpha_k^2 hbar_f = beta omega f^2
// at the given hbar_f.
PhysParams to_classical_field(const PhysParams& p, Dim dim, double f, double hbar_f = 1e-6);

// (hbar_f, alpha_k) -> (hbar_f / s, sqrt(s) alpha_k).  P_alpha is unchanged
// and P_vac scales by 1/s.
PhysParams rescale_field(const PhysParams& p, double s);

struct ClassicalFieldParams {
    double f = 1.0;
    double beta = MathConstants::pi;
    double delta_e = 1.0;
    double hbar_d = 1.0;
    double a = 1.0;
    double z0 = 0.0;
    double theta = MathConstants::pi / 2;
    double kperp_dot_xperp = 0.0;
    double lambda = 1.0;
};

void validate(const ClassicalFieldParams& cp);

// Full parameter point at resonance, omega = Omega = delta_e / hbar_d.
PhysParams resonance_params(const ClassicalFieldParams& cp, double hbar_f = 1.0);

// Classical field and detector, 1+1.  Mirror: (2 lambda^2 beta f^2 / (dE a)) sin^2(dE z0 / hbar_d),
// free: lambda^2 beta f^2 / (2 a dE).  Both motions give the same value.
double resonance_classical_1d(const ClassicalFieldParams& cp, Boundary boundary, Motion motion);

struct ClassicalResult {
    double p_alpha = 0.0;
    bool regime_ok = true;
    std::string warning;
};

// Large-acceleration forms in 3+1; flagged when dE/(hbar_d a) exceeds the threshold.
ClassicalResult resonance_classical_3d(const ClassicalFieldParams& cp, Boundary boundary, Motion motion,
                                       double regime_threshold = 0.1);

double y_function(double y);

struct PeakReport {
    double y_peak;
    double value_peak;
    double first_zero;
};

// Maximum of sin^2(y)/y on (0, pi) and its first zero.
PeakReport peak_analysis();

// dE = pi hbar_d / z0.
double gap_for_first_zero(double z0, double hbar_d);

}  // namespace unruh

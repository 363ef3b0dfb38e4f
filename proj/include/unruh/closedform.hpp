#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unruh/numkernel.hpp"
#include "unruh/scenario.hpp"

namespace unruh {

// Gamma-argument phases at one parameter point.  Entries that need the polar
// angle (phi3, phi4, phi_ex, psi1, psi2) are NaN in 1+1 dimensions.
struct PhaseSet {
    double phi1;
    double phi2;
    double phi3;
    double phi4;
    double phi;
    double phi_ex;
    double psi1;
    double psi2;
};

PhaseSet compute_phases(const PhysParams& p, Dim dim);

// The Bessel-function results available for accelerated atoms in 3+1.
struct ExactBranch {
    std::optional<double> p_vac_ex;
    std::optional<double> p_vac_de;
    double p_alpha = 0.0;
};

struct TransitionResult {
    double p_vac_ex = 0.0;
    double p_vac_de = 0.0;
    double p_alpha_ex = 0.0;
    double p_alpha_de = 0.0;
    bool regime_ok = true;
    std::string regime_warning;
    std::vector<std::string> warnings;
    std::optional<ExactBranch> exact;
};

struct ClosedFormOptions {
    double regime_threshold = 0.1;
};

TransitionResult transition(const ScenarioSpec& s, const PhysParams& p, const ClosedFormOptions& opt = {});

TransitionResult t1d_mirror_accel(const PhysParams& p);
TransitionResult t1d_mirror_static(const PhysParams& p);
TransitionResult t1d_free_accel(const PhysParams& p);
TransitionResult t1d_free_static(const PhysParams& p);
TransitionResult t3d_mirror_accel(const PhysParams& p);
TransitionResult t3d_mirror_static(const PhysParams& p);
TransitionResult t3d_free_accel(const PhysParams& p);
TransitionResult t3d_free_static(const PhysParams& p);

// Regime check for 3+1: omega/a and Omega/a below the threshold.
bool regime_ok(const PhysParams& p, double threshold);

}  // namespace unruh

#pragma once

#include <vector>

#include "unruh/numkernel.hpp"
#include "unruh/scenario.hpp"

namespace unruh {

struct Trajectory {
    double a = 1.0;
    double xi = 0.0;
};

struct MinkowskiPoint {
    double t;
    double z;
};

struct ModeSpec1D {
    double omega = 1.0;
    double z0 = 0.0;
    bool mirror = true;
};

struct ModeSpec3D {
    double omega = 1.0;
    double theta = std::numbers::pi / 2;
    double kperp_dot_xperp = 0.0;
    double z0 = 0.0;
    bool mirror = true;

    double kz() const;
    double kperp() const;
};

MinkowskiPoint rindler_to_minkowski(double eta, const Trajectory& traj);

// Plane-wave (standing-wave with mirror) mode at a Minkowski event.
cplx mink_mode_1d(double t, double z, const ModeSpec1D& spec);

cplx mink_mode_1d_on_accel_worldline(double tau, const ModeSpec1D& spec, double a);
cplx rindler_mode_1d_at_static_atom(double t, const ModeSpec1D& spec, double a);
cplx mink_mode_3d_on_accel_worldline(double tau, const ModeSpec3D& spec, double a);
cplx rindler_mode_3d_at_static_atom(double t, const ModeSpec3D& spec, double a);

struct ABF {
    double A;
    double B;
    cplx F;
};
ABF ab_coefficients(const ModeSpec3D& spec, double a);

struct UV {
    cplx U;
    cplx V;
};
UV uv_coefficients(const ModeSpec3D& spec, double a);

// Unit step with theta(0) = 1/2.
double unit_step(double x);

// One exponential piece of a mode along the detector's path.
//   Worldline:    coeff * exp(i (rate_u e^{-a tau} + rate_ut e^{a tau}))
//   RindlerLeft:  coeff * theta(z0 - t) (a (z0 - t))^{i power}
//   RindlerRight: coeff * theta(z0 + t) (a (z0 + t))^{i power}
enum class TermKind { Worldline, RindlerLeft, RindlerRight };

struct ModeTerm {
    cplx coeff;
    TermKind kind;
    double rate_u = 0.0;
    double rate_ut = 0.0;
    double power = 0.0;
};

ModeTerm conj(const ModeTerm& term);

// The mode of the scenario split into pieces; their sum is the mode function.
std::vector<ModeTerm> mode_terms(const ScenarioSpec& s, const PhysParams& p);

// Sum of the pieces at proper time (accelerated) or Minkowski time (static).
cplx evaluate_terms(const std::vector<ModeTerm>& terms, double time, double a, double z0);

// The mode function of the scenario evaluated directly.
cplx scenario_mode(const ScenarioSpec& s, const PhysParams& p, double time);

}  // namespace unruh

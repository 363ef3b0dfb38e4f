#include "unruh/modes.hpp"

#include <cmath>

namespace unruh {

namespace {

constexpr double kPi = MathConstants::pi;
const cplx I(0.0, 1.0);

double norm_1d(double omega) { return 1.0 / std::sqrt(4.0 * kPi * omega); }
double norm_3d(double omega) { return 1.0 / std::sqrt(16.0 * kPi * kPi * kPi * omega); }

// (x)^{i p} on x > 0, zero elsewhere (the edge itself has measure zero)
cplx imag_power(double x, double p) {
    if (!(x > 0.0)) return 0.0;
    return std::exp(I * (p * std::log(x)));
}

}  // namespace

double ModeSpec3D::kz() const { return omega * std::cos(theta); }
double ModeSpec3D::kperp() const { return omega * std::sin(theta); }

double unit_step(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

MinkowskiPoint rindler_to_minkowski(double eta, const Trajectory& traj) {
    double r = std::exp(traj.a * traj.xi) / traj.a;
    return {r * std::sinh(traj.a * eta), r * std::cosh(traj.a * eta)};
}

cplx mink_mode_1d(double t, double z, const ModeSpec1D& spec) {
    double w = spec.omega;
    if (!spec.mirror) return norm_1d(w) * std::exp(I * (w * (z - t)));
    cplx u = std::exp(I * (w * (z - spec.z0))) - std::exp(-I * (w * (z - spec.z0)));
    return norm_1d(w) * std::exp(-I * (w * t)) * u;
}

cplx mink_mode_1d_on_accel_worldline(double tau, const ModeSpec1D& spec, double a) {
    double w = spec.omega;
    cplx u = std::exp(I * ((w / a) * std::exp(-a * tau)));
    if (!spec.mirror) return norm_1d(w) * u;
    u *= std::exp(-I * (w * spec.z0));
    u -= std::exp(-I * ((w / a) * std::exp(a * tau))) * std::exp(I * (w * spec.z0));
    return norm_1d(w) * u;
}

cplx rindler_mode_1d_at_static_atom(double t, const ModeSpec1D& spec, double a) {
    double mu = spec.omega / a;
    double yl = a * (spec.z0 - t);
    double yr = a * (spec.z0 + t);
    cplx u = unit_step(yl) * imag_power(yl, mu);
    if (spec.mirror) u -= unit_step(yr) * imag_power(yr, -mu);
    return norm_1d(spec.omega) * u;
}

ABF ab_coefficients(const ModeSpec3D& spec, double a) {
    double c = std::cos(spec.theta);
    return {spec.omega * (1.0 - c) / (2.0 * a), spec.omega * (1.0 + c) / (2.0 * a),
            std::exp(-I * (spec.omega * spec.z0 * c))};
}

cplx mink_mode_3d_on_accel_worldline(double tau, const ModeSpec3D& spec, double a) {
    ABF k = ab_coefficients(spec, a);
    cplx transverse = std::exp(I * spec.kperp_dot_xperp);
    double ep = std::exp(a * tau), em = std::exp(-a * tau);
    cplx u = k.F * std::exp(-I * (k.A * ep - k.B * em));
    if (!spec.mirror) return norm_3d(spec.omega) * transverse * std::exp(-I * (k.A * ep - k.B * em));
    u -= std::conj(k.F) * std::exp(-I * (k.B * ep - k.A * em));
    return norm_3d(spec.omega) * transverse * u;
}

UV uv_coefficients(const ModeSpec3D& spec, double a) {
    double mu = spec.omega / a;
    double log_c = 0.5 * std::log(std::sinh(kPi * mu) / (16.0 * std::pow(kPi, 4) * a));
    double log_r = std::log(spec.kperp() / (2.0 * a));
    cplx lg_minus = complex_log_gamma(cplx(0.0, -mu));
    cplx lg_plus = complex_log_gamma(cplx(0.0, mu));
    cplx chi = I * spec.kperp_dot_xperp;
    cplx U = std::exp(log_c + chi + lg_minus + I * (mu * log_r));
    cplx V = std::exp(log_c + chi + lg_plus - I * (mu * log_r));
    return {U, V};
}

cplx rindler_mode_3d_at_static_atom(double t, const ModeSpec3D& spec, double a) {
    double mu = spec.omega / a;
    UV uv = uv_coefficients(spec, a);
    double yl = a * (spec.z0 - t);
    double yr = a * (spec.z0 + t);
    cplx left = unit_step(yl) * imag_power(yl, mu);
    cplx right = unit_step(yr) * imag_power(yr, -mu);
    if (spec.mirror) return (uv.U - uv.V) * (left - right);
    return uv.U * left + uv.V * right;
}

ModeTerm conj(const ModeTerm& term) {
    ModeTerm c = term;
    c.coeff = std::conj(term.coeff);
    c.rate_u = -term.rate_u;
    c.rate_ut = -term.rate_ut;
    c.power = -term.power;
    return c;
}

std::vector<ModeTerm> mode_terms(const ScenarioSpec& s, const PhysParams& p) {
    const bool mirror = s.boundary == Boundary::Mirror;
    const double a = p.a, w = p.omega, mu = w / a;
    std::vector<ModeTerm> terms;

    if (s.dim == Dim::D1) {
        double n = norm_1d(w);
        if (s.motion == Motion::Accelerated) {
            if (mirror) {
                terms.push_back({n * std::exp(-I * (w * p.z0)), TermKind::Worldline, mu, 0.0, 0.0});
                terms.push_back({-n * std::exp(I * (w * p.z0)), TermKind::Worldline, 0.0, -mu, 0.0});
            } else {
                terms.push_back({n, TermKind::Worldline, mu, 0.0, 0.0});
            }
        } else {
            terms.push_back({n, TermKind::RindlerLeft, 0.0, 0.0, mu});
            if (mirror) terms.push_back({-n, TermKind::RindlerRight, 0.0, 0.0, -mu});
        }
        return terms;
    }

    ModeSpec3D spec{w, p.theta, p.kperp_dot_xperp, p.z0, mirror};
    if (s.motion == Motion::Accelerated) {
        ABF k = ab_coefficients(spec, a);
        cplx pre = norm_3d(w) * std::exp(I * p.kperp_dot_xperp);
        if (mirror) {
            terms.push_back({pre * k.F, TermKind::Worldline, k.B, -k.A, 0.0});
            terms.push_back({-pre * std::conj(k.F), TermKind::Worldline, k.A, -k.B, 0.0});
        } else {
            terms.push_back({pre, TermKind::Worldline, k.B, -k.A, 0.0});
        }
    } else {
        UV uv = uv_coefficients(spec, a);
        if (mirror) {
            terms.push_back({uv.U - uv.V, TermKind::RindlerLeft, 0.0, 0.0, mu});
            terms.push_back({-(uv.U - uv.V), TermKind::RindlerRight, 0.0, 0.0, -mu});
        } else {
            terms.push_back({uv.U, TermKind::RindlerLeft, 0.0, 0.0, mu});
            terms.push_back({uv.V, TermKind::RindlerRight, 0.0, 0.0, -mu});
        }
    }
    return terms;
}

cplx evaluate_terms(const std::vector<ModeTerm>& terms, double time, double a, double z0) {
    cplx sum = 0.0;
    for (const auto& t : terms) {
        switch (t.kind) {
            case TermKind::Worldline:
                sum += t.coeff * std::exp(I * (t.rate_u * std::exp(-a * time) + t.rate_ut * std::exp(a * time)));
                break;
            case TermKind::RindlerLeft: {
                double y = a * (z0 - time);
                sum += t.coeff * unit_step(y) * imag_power(y, t.power);
                break;
            }
            case TermKind::RindlerRight: {
                double y = a * (z0 + time);
                sum += t.coeff * unit_step(y) * imag_power(y, t.power);
                break;
            }
        }
    }
    return sum;
}

cplx scenario_mode(const ScenarioSpec& s, const PhysParams& p, double time) {
    const bool mirror = s.boundary == Boundary::Mirror;
    if (s.dim == Dim::D1) {
        ModeSpec1D spec{p.omega, p.z0, mirror};
        return s.motion == Motion::Accelerated ? mink_mode_1d_on_accel_worldline(time, spec, p.a)
                                               : rindler_mode_1d_at_static_atom(time, spec, p.a);
    }
    ModeSpec3D spec{p.omega, p.theta, p.kperp_dot_xperp, p.z0, mirror};
    return s.motion == Motion::Accelerated ? mink_mode_3d_on_accel_worldline(time, spec, p.a)
                                           : rindler_mode_3d_at_static_atom(time, spec, p.a);
}

}  // namespace unruh

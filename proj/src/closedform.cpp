#include "unruh/closedform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace unruh {

namespace {

constexpr double kPi = MathConstants::pi;
const cplx I(0.0, 1.0);
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double sq(double x) { return x * x; }

// 1/(e^{2 pi x} - 1) and 1/(1 - e^{-2 pi x})
double bose_ex(double x) { return 1.0 / std::expm1(2.0 * kPi * x); }
double bose_de(double x) { return -1.0 / std::expm1(-2.0 * kPi * x); }

double vac_scale(const PhysParams& p) { return sq(p.lambda) * p.hbar_f / p.hbar_d; }
double coh_scale(const PhysParams& p) { return sq(p.lambda) * sq(p.alpha_k) * p.hbar_f / p.hbar_d; }

TransitionResult make(double ex, double de, double alpha) {
    TransitionResult r;
    r.p_vac_ex = ex;
    r.p_vac_de = de;
    r.p_alpha_ex = alpha;
    r.p_alpha_de = alpha;
    return r;
}

}  // namespace

PhaseSet compute_phases(const PhysParams& p, Dim dim) {
    const double nu = p.Omega / p.a, mu = p.omega / p.a;
    PhaseSet ph{};
    ph.phi1 = gamma_phase(nu, mu);
    ph.phi2 = gamma_phase(mu, nu);
    ph.phi = ph.phi2;
    if (dim == Dim::D1) {
        ph.phi3 = ph.phi4 = ph.phi_ex = ph.psi1 = ph.psi2 = kNaN;
        return ph;
    }
    const double kz = p.omega * std::cos(p.theta);
    const double kperp = p.omega * std::sin(p.theta);
    ph.phi3 = gamma_phase(nu, kperp / (2.0 * p.a));
    ph.phi4 = gamma_phase(mu, kperp / (2.0 * p.a));
    ph.phi_ex = -mu * std::log(kperp / (2.0 * p.Omega));
    // kappa1 = ((w+kz)/2a)^{-i nu} Gamma(i nu), kappa2 = ((w-kz)/2a)^{i nu} Gamma(-i nu)
    ph.psi1 = wrap_phase(-gamma_phase(nu, (p.omega + kz) / (2.0 * p.a)));
    ph.psi2 = gamma_phase(nu, (p.omega - kz) / (2.0 * p.a));
    return ph;
}

TransitionResult t1d_mirror_accel(const PhysParams& p) {
    const double nu = p.Omega / p.a;
    const double phi1 = gamma_phase(nu, p.omega / p.a);
    const double wz = p.omega * p.z0;
    const double pre = 2.0 * vac_scale(p) / (p.omega * p.a * p.Omega);
    const double amp = -std::exp(0.5 * kPi * nu) * std::sin(wz - phi1) + std::exp(-0.5 * kPi * nu) * std::sin(wz + phi1);
    const double alpha = coh_scale(p) / (p.Omega * p.omega * p.a * std::sinh(kPi * nu)) * sq(amp);
    return make(pre * sq(std::sin(wz + phi1)) * bose_ex(nu), pre * sq(std::sin(wz - phi1)) * bose_de(nu), alpha);
}

TransitionResult t1d_mirror_static(const PhysParams& p) {
    const double mu = p.omega / p.a;
    const double phi2 = gamma_phase(mu, p.Omega / p.a);
    const double Wz = p.Omega * p.z0;
    const double pre = 2.0 * vac_scale(p) / (p.a * sq(p.Omega));
    const double amp = -std::exp(0.5 * kPi * mu) * std::sin(Wz - phi2) + std::exp(-0.5 * kPi * mu) * std::sin(Wz + phi2);
    const double alpha = coh_scale(p) / (p.a * sq(p.Omega) * std::sinh(kPi * mu)) * sq(amp);
    return make(pre * sq(std::sin(Wz + phi2)) * bose_ex(mu), pre * sq(std::sin(Wz - phi2)) * bose_de(mu), alpha);
}

TransitionResult t1d_free_accel(const PhysParams& p) {
    const double nu = p.Omega / p.a;
    const double pre = vac_scale(p) / (2.0 * p.omega * p.a * p.Omega);
    const double alpha = coh_scale(p) / (2.0 * p.omega * p.a * p.Omega) / std::tanh(0.5 * kPi * nu);
    return make(pre * bose_ex(nu), pre * bose_de(nu), alpha);
}

TransitionResult t1d_free_static(const PhysParams& p) {
    const double mu = p.omega / p.a;
    const double phi = gamma_phase(mu, p.Omega / p.a);
    const double pre = vac_scale(p) / (2.0 * p.a * sq(p.Omega));
    const cplx amp = std::exp(0.5 * kPi * mu) * std::exp(I * phi) - std::exp(-0.5 * kPi * mu) * std::exp(-I * phi);
    const double alpha = coh_scale(p) / (4.0 * p.a * sq(p.Omega) * std::sinh(kPi * mu)) * std::norm(amp);
    return make(pre * bose_ex(mu), pre * bose_de(mu), alpha);
}

TransitionResult t3d_mirror_accel(const PhysParams& p) {
    const double nu = p.Omega / p.a;
    const PhaseSet ph = compute_phases(p, Dim::D3);
    const double Z = p.omega * std::cos(p.theta) * p.z0;
    const double chi = p.kperp_dot_xperp;
    const double s_minus = std::sin(Z - ph.psi1) + std::sin(Z - ph.psi2);
    const double s_plus = std::sin(Z + ph.psi1) + std::sin(Z + ph.psi2);

    const double pre = vac_scale(p) / (2.0 * kPi * kPi * p.a * p.omega * p.Omega);
    const cplx amp = std::exp(-I * chi + 0.5 * kPi * nu) * s_plus - std::exp(I * chi - 0.5 * kPi * nu) * s_minus;
    const double alpha = coh_scale(p) / (4.0 * kPi * kPi * p.a * p.omega * p.Omega * std::sinh(kPi * nu)) * std::norm(amp);
    TransitionResult r = make(pre * sq(s_minus) * bose_ex(nu), pre * sq(s_plus) * bose_de(nu), alpha);

    // Bessel form, no large-acceleration expansion
    const double c = std::cos(p.theta);
    const double A = p.omega * (1.0 - c) / (2.0 * p.a), B = p.omega * (1.0 + c) / (2.0 * p.a);
    double K = 0.0;
    try {
        K = bessel_k_imag_order(nu, p.omega * std::sin(p.theta) / p.a);
    } catch (const AccuracyError& e) {
        r.warnings.push_back(std::string("Bessel branch unavailable: ") + e.what());
        return r;
    }
    const cplx F = std::exp(-I * (p.omega * p.z0 * c));
    const cplx rp = std::exp(I * (0.5 * nu * std::log(A / B)));
    const cplx rm = 1.0 / rp;
    const cplx bracket = std::exp(-I * chi + 0.5 * kPi * nu) * (rp * std::conj(F) - rm * F) +
                         std::exp(I * chi - 0.5 * kPi * nu) * (rp * F - rm * std::conj(F));
    ExactBranch ex;
    ex.p_alpha = coh_scale(p) / (4.0 * std::pow(kPi, 3) * sq(p.a) * p.omega) * sq(K) * std::norm(bracket);
    r.exact = ex;
    return r;
}

TransitionResult t3d_mirror_static(const PhysParams& p) {
    const double mu = p.omega / p.a;
    const PhaseSet ph = compute_phases(p, Dim::D3);
    const double Wz = p.Omega * p.z0;
    const double chi = p.kperp_dot_xperp;
    const double s4 = sq(std::sin(ph.phi4));
    const double pre = 2.0 * vac_scale(p) * s4 / (kPi * kPi * p.a * sq(p.Omega));
    const cplx amp = std::exp(-0.5 * kPi * mu + I * chi) * std::sin(Wz + ph.phi) +
                     std::exp(0.5 * kPi * mu - I * chi) * std::sin(Wz - ph.phi);
    const double alpha = coh_scale(p) * s4 / (kPi * kPi * p.a * sq(p.Omega) * std::sinh(kPi * mu)) * std::norm(amp);
    return make(pre * sq(std::sin(Wz + ph.phi)) * bose_ex(mu), pre * sq(std::sin(Wz - ph.phi)) * bose_de(mu), alpha);
}

TransitionResult t3d_free_accel(const PhysParams& p) {
    const double nu = p.Omega / p.a;
    const double phi3 = gamma_phase(nu, p.omega * std::sin(p.theta) / (2.0 * p.a));
    const double chi = p.kperp_dot_xperp;
    const double c3 = sq(std::cos(phi3));

    const double pre = vac_scale(p) * c3 / (2.0 * kPi * kPi * p.a * p.omega * p.Omega);
    const cplx amp = std::exp(I * chi + 0.5 * kPi * nu) + std::exp(-I * chi - 0.5 * kPi * nu);
    const double alpha = coh_scale(p) * c3 / (4.0 * kPi * kPi * p.omega * p.a * p.Omega * std::sinh(kPi * nu)) * std::norm(amp);
    TransitionResult r = make(pre * bose_ex(nu), pre * bose_de(nu), alpha);

    double K2 = 0.0;
    try {
        K2 = sq(bessel_k_imag_order(nu, p.omega * std::sin(p.theta) / p.a));
    } catch (const AccuracyError& e) {
        r.warnings.push_back(std::string("Bessel branch unavailable: ") + e.what());
        return r;
    }
    const double base = K2 / (4.0 * std::pow(kPi, 3) * sq(p.a) * p.omega);
    const cplx amp_exact = std::exp(I * chi - 0.5 * kPi * nu) + std::exp(-I * chi + 0.5 * kPi * nu);
    ExactBranch ex;
    ex.p_vac_ex = vac_scale(p) * std::exp(-kPi * nu) * base;
    ex.p_vac_de = vac_scale(p) * std::exp(kPi * nu) * base;
    ex.p_alpha = coh_scale(p) * base * std::norm(amp_exact);
    r.exact = ex;
    return r;
}

TransitionResult t3d_free_static(const PhysParams& p) {
    const double mu = p.omega / p.a;
    const double kperp = p.omega * std::sin(p.theta);
    const double phi_ex = -mu * std::log(kperp / (2.0 * p.Omega));
    const double Wz = p.Omega * p.z0;
    const double chi = p.kperp_dot_xperp;
    const double pre = vac_scale(p) / (2.0 * kPi * kPi * p.a * sq(p.Omega));
    const cplx amp = -std::exp(-0.5 * kPi * mu + I * chi) * std::cos(Wz + phi_ex) +
                     std::exp(0.5 * kPi * mu - I * chi) * std::cos(Wz - phi_ex);
    const double alpha = coh_scale(p) / (4.0 * kPi * kPi * p.a * sq(p.Omega) * std::sinh(kPi * mu)) * std::norm(amp);
    return make(pre * sq(std::cos(Wz + phi_ex)) * bose_ex(mu), pre * sq(std::cos(Wz - phi_ex)) * bose_de(mu), alpha);
}

bool regime_ok(const PhysParams& p, double threshold) {
    return p.omega / p.a < threshold && p.Omega / p.a < threshold;
}

TransitionResult transition(const ScenarioSpec& s, const PhysParams& p, const ClosedFormOptions& opt) {
    validate(s, p);
    const bool mirror = s.boundary == Boundary::Mirror;
    const bool accel = s.motion == Motion::Accelerated;

    TransitionResult r;
    if (s.dim == Dim::D1) {
        if (accel) r = mirror ? t1d_mirror_accel(p) : t1d_free_accel(p);
        else r = mirror ? t1d_mirror_static(p) : t1d_free_static(p);
    } else {
        if (accel) r = mirror ? t3d_mirror_accel(p) : t3d_free_accel(p);
        else r = mirror ? t3d_mirror_static(p) : t3d_free_static(p);
        r.regime_ok = regime_ok(p, opt.regime_threshold);
        if (!r.regime_ok) {
            std::ostringstream os;
            os.precision(6);
            os << "large-acceleration regime not satisfied: omega/a = " << p.omega / p.a
               << ", Omega/a = " << p.Omega / p.a << " (threshold " << opt.regime_threshold << ")";
            r.regime_warning = os.str();
        }
    }

    if (!accel && p.z0 >= 1.0 / p.a) r.warnings.push_back("static atom at z0 >= 1/a");
    if (r.p_vac_ex > 1.0 || r.p_vac_de > 1.0 || r.p_alpha_ex > 1.0)
        r.warnings.push_back("probability exceeds 1: first-order perturbation theory not valid here");
    return r;
}

}  // namespace unruh

#include "unruh/limits.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace unruh {

namespace {

constexpr double kPi = MathConstants::pi;

double sq(double x) { return x * x; }

double find_root(double (*f)(double), double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
    boost::uintmax_t iters = 200;
    auto [l, h] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (l + h);
}

}  // namespace

double beta_for(Dim dim) { return dim == Dim::D1 ? kPi : 4.0 * kPi * kPi * kPi; }

PhysParams to_classical_field(const PhysParams& p, Dim dim, double f, double hbar_f) {
    if (!(f >= 0.0)) throw std::domain_error("to_classical_field: f must be non-negative");
    if (!(hbar_f > 0.0)) throw std::domain_error("to_classical_field: hbar_f must be positive");
    PhysParams q = p;
    q.hbar_f = hbar_f;
    q.alpha_k = std::sqrt(beta_for(dim) * p.omega * f * f / hbar_f);
    return q;
}

PhysParams rescale_field(const PhysParams& p, double s) {
    if (!(s > 0.0)) throw std::domain_error("rescale_field: s must be positive");
    PhysParams q = p;
    q.hbar_f = p.hbar_f / s;
    q.alpha_k = std::sqrt(s) * p.alpha_k;
    return q;
}

void validate(const ClassicalFieldParams& cp) {
    if (!(cp.f >= 0.0)) throw std::domain_error("f must be non-negative");
    if (!(cp.beta > 0.0)) throw std::domain_error("beta must be positive");
    if (!(cp.delta_e > 0.0)) throw std::domain_error("delta_e must be positive");
    if (!(cp.hbar_d > 0.0)) throw std::domain_error("hbar_d must be positive");
    if (!(cp.a > 0.0)) throw std::domain_error("a must be positive");
    if (!(cp.z0 >= 0.0)) throw std::domain_error("z0 must be non-negative");
}

PhysParams resonance_params(const ClassicalFieldParams& cp, double hbar_f) {
    validate(cp);
    PhysParams p;
    p.a = cp.a;
    p.omega = p.Omega = cp.delta_e / cp.hbar_d;
    p.z0 = cp.z0;
    p.theta = cp.theta;
    p.kperp_dot_xperp = cp.kperp_dot_xperp;
    p.lambda = cp.lambda;
    p.hbar_d = cp.hbar_d;
    p.hbar_f = hbar_f;
    p.alpha_k = std::sqrt(cp.beta * p.omega * cp.f * cp.f / hbar_f);
    return p;
}

double resonance_classical_1d(const ClassicalFieldParams& cp, Boundary boundary, Motion) {
    validate(cp);
    const double amp = sq(cp.lambda) * cp.beta * sq(cp.f);
    if (boundary == Boundary::Free) return amp / (2.0 * cp.a * cp.delta_e);
    return 2.0 * amp / (cp.delta_e * cp.a) * sq(std::sin(cp.delta_e * cp.z0 / cp.hbar_d));
}

ClassicalResult resonance_classical_3d(const ClassicalFieldParams& cp, Boundary boundary, Motion motion,
                                       double regime_threshold) {
    validate(cp);
    if (!(cp.theta > 0.0 && cp.theta < kPi)) throw std::domain_error("theta must lie in (0, pi)");
    const double amp = sq(cp.lambda) * cp.beta * sq(cp.f);
    const double hd = cp.hbar_d, de = cp.delta_e, a = cp.a;
    const double ratio = de / (hd * a);
    const double kx = cp.kperp_dot_xperp;
    const double pi3 = kPi * kPi * kPi;
    const double log_term = MathConstants::euler_gamma + std::log(ratio * std::sin(cp.theta) / 2.0);

    ClassicalResult out;
    const bool mirror = boundary == Boundary::Mirror;
    if (motion == Motion::Accelerated) {
        double pre = amp / (pi3 * hd * a * a) * sq(log_term);
        out.p_alpha = mirror ? 4.0 * pre * sq(std::sin(de * cp.z0 * std::cos(cp.theta) / hd)) * sq(std::sin(kx))
                             : pre * sq(std::cos(kx));
    } else {
        double pre = amp * hd / (pi3 * de * de) * sq(std::sin(kx));
        out.p_alpha = mirror ? 4.0 * pre * sq(std::cos(de * cp.z0 / hd)) : pre;
    }
    out.regime_ok = ratio <= regime_threshold;
    if (!out.regime_ok) {
        std::ostringstream os;
        os << "large-acceleration regime not satisfied: dE/(hbar_d a) = " << ratio << " (threshold "
           << regime_threshold << ")";
        out.warning = os.str();
    }
    return out;
}

double y_function(double y) {
    if (y == 0.0) return 0.0;
    return sq(std::sin(y)) / y;
}

PeakReport peak_analysis() {
    // dY/dy = sin y (2 y cos y - sin y) / y^2, so the peak sits at tan y = 2y.
    double y_peak = find_root([](double y) { return 2.0 * y * std::cos(y) - std::sin(y); }, 0.5, 1.5);
    double first_zero = find_root([](double y) { return std::sin(y); }, 2.5, 3.5);
    return {y_peak, y_function(y_peak), first_zero};
}

double gap_for_first_zero(double z0, double hbar_d) {
    if (!(z0 > 0.0)) throw std::domain_error("gap_for_first_zero: z0 must be positive");
    if (!(hbar_d > 0.0)) throw std::domain_error("gap_for_first_zero: hbar_d must be positive");
    return kPi * hbar_d / z0;
}

}  // namespace unruh

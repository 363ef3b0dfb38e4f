#include "unruh/numkernel.hpp"

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace unruh {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * MathConstants::pi);

cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    const double pi = MathConstants::pi;
    const cplx i(0.0, 1.0);
    if (z.imag() >= 0.0) {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        return -i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z)) - std::log(2.0 * i);
    }
    return i * pi * z + std::log(std::exp(-2.0 * i * pi * z) - 1.0) - std::log(2.0 * i);
}

bool is_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::nearbyint(z.real()) == z.real();
}

}  // namespace

cplx complex_log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("complex_log_gamma: non-finite argument");
    if (is_pole(z)) throw std::domain_error("complex_log_gamma: pole at non-positive integer");

    if (z.real() >= 0.5) return lanczos_log_gamma(z);

    if (z.real() > -20.0) {
        // lnG(z) = lnG(z + n) - sum_{k<n} ln(z + k)
        int n = int(std::ceil(0.5 - z.real()));
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) acc += std::log(z + double(k));
        return lanczos_log_gamma(z + double(n)) - acc;
    }
    const double pi = MathConstants::pi;
    return std::log(pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

double wrap_phase(double angle) {
    const double two_pi = 2.0 * MathConstants::pi;
    double w = std::remainder(angle, two_pi);
    if (w <= -MathConstants::pi) w += two_pi;
    return w;
}

double gamma_phase(double nu, double r) {
    if (nu == 0.0 || !std::isfinite(nu)) throw std::domain_error("gamma_phase: nu must be non-zero");
    if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("gamma_phase: r must be positive");
    double im = complex_log_gamma(cplx(0.0, -nu)).imag();
    return wrap_phase(nu * std::log(r) + im);
}

double bessel_k_imag_order(double nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_k_imag_order: x must be positive");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::domain_error("bessel_k_imag_order: nu must be >= 0");

    // cut where exp(-x cosh t) < 1e-18
    const double log_cut = 18.0 * std::log(10.0);
    const double t_max = std::acosh(std::max(log_cut / x, 1.0) + 1.0);

    auto f = [nu, x](double t) { return std::exp(-x * std::cosh(t)) * std::cos(nu * t); };

    // one panel per half period of cos(nu t) keeps each piece non-oscillatory
    double panel = nu > 0.0 ? MathConstants::pi / nu : t_max;
    panel = std::min(panel, t_max);

    // Two independent rules; their difference is the error estimate, since the
    // Kronrod estimate of a single rule is far too pessimistic under cancellation.
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    using GKFine = boost::math::quadrature::gauss_kronrod<double, 61>;
    double sum = 0.0, alt = 0.0, abs_sum = 0.0;
    for (double lo = 0.0; lo < t_max; lo += panel) {
        double hi = std::min(lo + panel, t_max);
        double l1 = 0.0;
        sum += GK::integrate(f, lo, hi, 15, 1e-15, nullptr, &l1);
        abs_sum += l1;
        const double q = (hi - lo) / 4;
        for (int k = 0; k < 4; ++k) alt += GKFine::integrate(f, lo + k * q, lo + (k + 1) * q, 0);
    }
    // the absolute floor is set by round-off on the L1 norm of the integrand
    double floor = 1e-15 * abs_sum;
    double achieved = (std::abs(sum) > 0.0) ? (std::abs(sum - alt) + floor) / std::abs(sum) : INFINITY;
    if (achieved > 1e-8) {
        throw AccuracyError("bessel_k_imag_order: cancellation limits accuracy at nu=" +
                                std::to_string(nu) + ", x=" + std::to_string(x),
                            achieved);
    }
    return sum;
}

double bessel_k_small_x(double nu, double x, std::string* warning) {
    if (nu == 0.0 || !std::isfinite(nu)) throw std::domain_error("bessel_k_small_x: nu must be non-zero");
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_k_small_x: x must be positive");
    if (warning) {
        warning->clear();
        if (x > 0.1) *warning = "bessel_k_small_x: x = " + std::to_string(x) + " is outside the small-x region";
    }
    // (x/2)^{i nu} Gamma(-i nu), real part
    cplx lg = complex_log_gamma(cplx(0.0, -nu));
    cplx w = std::exp(lg + cplx(0.0, nu * std::log(0.5 * x)));
    return w.real();
}

}  // namespace unruh

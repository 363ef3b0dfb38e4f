#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace unruh {

using cplx = std::complex<double>;

struct MathConstants {
    static constexpr double euler_gamma = 0.57721566490153286061;
    static constexpr double pi = std::numbers::pi;
};

// Thrown when a numerical routine cannot reach its target accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// log Gamma(z) on the principal sheet of the Lanczos form (g = 7, 9 terms),
// extended to Re z < 1/2 by upward recurrence or reflection.
cplx complex_log_gamma(cplx z);

// Arg[r^{i nu} Gamma(-i nu)] wrapped to (-pi, pi].
double gamma_phase(double nu, double r);

// Wrap an angle to (-pi, pi].
double wrap_phase(double angle);

// K_{i nu}(x) from  int_0^inf exp(-x cosh t) cos(nu t) dt.
double bessel_k_imag_order(double nu, double x);

// Small-argument form Re[(x/2)^{i nu} Gamma(-i nu)].  If warning is given it
// receives a note when x lies outside the small-x region (x > 0.1).
double bessel_k_small_x(double nu, double x, std::string* warning = nullptr);

}  // namespace unruh

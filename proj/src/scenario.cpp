#include "unruh/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace unruh {

std::string to_string(Dim d) { return d == Dim::D1 ? "1+1" : "3+1"; }
std::string to_string(Motion m) { return m == Motion::Accelerated ? "accel" : "static"; }
std::string to_string(Boundary b) { return b == Boundary::Mirror ? "mirror" : "free"; }

std::string to_string(const ScenarioSpec& s) {
    return to_string(s.dim) + "/" + to_string(s.motion) + "/" + to_string(s.boundary);
}

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}
}  // namespace

void validate(const ScenarioSpec& s, const PhysParams& p) {
    require(std::isfinite(p.a) && p.a > 0.0, "a must be positive");
    require(std::isfinite(p.omega) && p.omega > 0.0, "omega must be positive");
    require(std::isfinite(p.Omega) && p.Omega > 0.0, "Omega must be positive");
    require(std::isfinite(p.z0) && p.z0 >= 0.0, "z0 must be non-negative");
    require(std::isfinite(p.lambda) && p.lambda > 0.0, "lambda must be positive");
    require(std::isfinite(p.alpha_k) && p.alpha_k >= 0.0, "alpha_k must be non-negative");
    require(std::isfinite(p.hbar_f) && p.hbar_f > 0.0, "hbar_f must be positive");
    require(std::isfinite(p.hbar_d) && p.hbar_d > 0.0, "hbar_d must be positive");
    if (s.dim == Dim::D3) {
        require(std::isfinite(p.theta) && p.theta > 0.0 && p.theta < M_PI, "theta must lie in (0, pi)");
        require(std::isfinite(p.kperp_dot_xperp), "kperp_dot_xperp must be finite");
    }
}

}  // namespace unruh

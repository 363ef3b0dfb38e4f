#pragma once

#include <numbers>
#include <string>

namespace unruh {

enum class Dim { D1, D3 };
enum class Motion { Accelerated, Static };
enum class Boundary { Mirror, Free };

struct ScenarioSpec {
    Dim dim = Dim::D1;
    Motion motion = Motion::Accelerated;
    Boundary boundary = Boundary::Mirror;
};

// c = 1.  theta and kperp_dot_xperp are ignored in 1+1 dimensions.
struct PhysParams {
    double a = 1.0;
    double omega = 1.0;
    double Omega = 1.0;
    double z0 = 0.0;
    double theta = std::numbers::pi / 2;
    double kperp_dot_xperp = 0.0;
    double lambda = 1.0;
    double alpha_k = 1.0;
    double hbar_f = 1.0;
    double hbar_d = 1.0;
};

std::string to_string(Dim d);
std::string to_string(Motion m);
std::string to_string(Boundary b);
std::string to_string(const ScenarioSpec& s);

// Throws std::domain_error when a parameter lies outside its allowed range.
void validate(const ScenarioSpec& s, const PhysParams& p);

}  // namespace unruh

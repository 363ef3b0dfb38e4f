// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "unruh/closedform.hpp"
#include "unruh/limits.hpp"
#include "unruh/oracle.hpp"

using namespace unruh;

namespace {

constexpr double kPi = MathConstants::pi;

double rel(double got, double ref) {
    if (got == ref) return 0.0;
    return std::abs(got - ref) / std::abs(ref);
}

ScenarioSpec sc(int i) {
    return {i < 4 ? Dim::D1 : Dim::D3, (i & 1) ? Motion::Static : Motion::Accelerated,
            (i & 2) ? Boundary::Free : Boundary::Mirror};
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Oracle grid shared by criteria 1 and 3.
struct GridPoint {
    ScenarioSpec s;
    PhysParams p;
    TransitionResult closed;
    NumericTransition num;
};

std::vector<GridPoint> oracle_grid() {
    std::vector<GridPoint> g;
    for (int i = 0; i < 4; ++i) {
        ScenarioSpec s = sc(i);
        std::vector<double> z0s = s.boundary == Boundary::Mirror ? std::vector<double>{0.0, 0.3, 1.0} : std::vector<double>{0.0};
        for (double a : {0.5, 1.0, 2.0})
            for (double w : {0.5, 1.0})
                for (double W : {0.5, 1.0, 2.0})
                    for (double z : z0s) {
                        PhysParams p;
                        p.a = a;
                        p.omega = w;
                        p.Omega = W;
                        p.z0 = z;
                        g.push_back({s, p, transition(s, p), p_numeric(s, p)});
                    }
    }
    return g;
}

Outcome criterion1(const std::vector<GridPoint>& g) {
    double worst = 0.0;
    int excluded = 0;
    for (const auto& pt : g) {
        if (!pt.num.converged) {
            ++excluded;
            std::printf("    excluded (not converged): %s a=%g omega=%g Omega=%g z0=%g\n", to_string(pt.s).c_str(),
                        pt.p.a, pt.p.omega, pt.p.Omega, pt.p.z0);
            continue;
        }
        const auto& c = pt.closed;
        const auto& n = pt.num.probabilities;
        for (auto [x, y] : {std::pair{n.p_vac_ex, c.p_vac_ex}, std::pair{n.p_vac_de, c.p_vac_de},
                            std::pair{n.p_alpha_ex, c.p_alpha_ex}, std::pair{n.p_alpha_de, c.p_alpha_de}})
            worst = std::max(worst, rel(x, y));
    }
    return {worst < 1e-4, std::to_string(g.size()) + " points, " + std::to_string(excluded) + " excluded, worst rel " +
                              fmt("%.2e", worst)};
}

Outcome criterion2() {
    double worst = 0.0;
    auto check = [&](const ScenarioSpec& s, PhysParams p, bool use_exact, double freq) {
        auto r = transition(s, p);
        double ex = use_exact ? *r.exact->p_vac_ex : r.p_vac_ex;
        double de = use_exact ? *r.exact->p_vac_de : r.p_vac_de;
        worst = std::max(worst, rel(ex / de, std::exp(-2 * kPi * freq / p.a)));
    };
    for (double a : {0.5, 1.0, 3.0, 20.0})
        for (double w : {0.4, 1.3})
            for (double W : {0.7, 2.0}) {
                PhysParams p;
                p.a = a;
                p.omega = w;
                p.Omega = W;
                // the mirror breaks the balance unless it sits at z0 = 0
                for (double z : {0.0, 0.3})
                    for (int i = 0; i < 4; ++i) {
                        if (z != 0.0 && sc(i).boundary == Boundary::Mirror) continue;
                        p.z0 = z;
                        check(sc(i), p, false, sc(i).motion == Motion::Accelerated ? W : w);
                    }
                PhysParams q = p;
                q.a *= 20.0;
                q.theta = 1.1;
                q.kperp_dot_xperp = 0.4;
                q.z0 = 0.0;
                check({Dim::D3, Motion::Accelerated, Boundary::Mirror}, q, false, W);
                check({Dim::D3, Motion::Accelerated, Boundary::Free}, q, true, W);
                check({Dim::D3, Motion::Static, Boundary::Free}, q, false, w);
            }
    return {worst < 1e-12, "worst rel " + fmt("%.2e", worst)};
}

Outcome criterion3(const std::vector<GridPoint>& g, const QuadratureConfig& cfg) {
    bool shared = true;
    for (int i = 0; i < 8; ++i)
        for (double a : {0.5, 2.0, 40.0})
            for (double W : {0.5, 2.0}) {
                PhysParams p;
                p.a = a;
                p.Omega = W;
                p.z0 = 0.3;
                p.theta = 0.8;
                p.kperp_dot_xperp = 0.5;
                auto r = transition(sc(i), p);
                shared = shared && r.p_alpha_ex == r.p_alpha_de;
            }
    // |A|^2 doubles the relative amplitude error; two independent estimates
    const double tol = 4.0 * cfg.rel_tol;
    double worst = 0.0;
    for (const auto& pt : g) {
        if (!pt.num.converged) continue;
        worst = std::max(worst, rel(pt.num.probabilities.p_alpha_de, pt.num.probabilities.p_alpha_ex));
    }
    return {shared && worst < tol, std::string("closed form ") + (shared ? "identical" : "DIFFERS") +
                                       ", oracle worst rel " + fmt("%.2e", worst) + " (tol " + fmt("%.0e", tol) + ")"};
}

Outcome criterion4() {
    double worst = 0.0;
    auto cmp = [&](double x, double y) { worst = std::max(worst, std::abs(x - y) / std::max(std::abs(y), 1e-300)); };
    for (double a : {0.5, 1.0, 2.0})
        for (double z : {0.0, 0.3})
            for (double w : {0.5, 1.0, 1.7}) {
                PhysParams p;
                p.a = a;
                p.omega = p.Omega = w;
                p.z0 = z;
                auto m1 = t1d_mirror_accel(p), m2 = t1d_mirror_static(p);
                cmp(m1.p_vac_ex, m2.p_vac_ex);
                cmp(m1.p_vac_de, m2.p_vac_de);
                cmp(m1.p_alpha_ex, m2.p_alpha_ex);
                cmp(m1.p_alpha_de, m2.p_alpha_de);
                auto f1 = t1d_free_accel(p), f2 = t1d_free_static(p);
                cmp(f1.p_vac_ex, f2.p_vac_ex);
                cmp(f1.p_vac_de, f2.p_vac_de);
            }
    return {worst < 1e-12, "worst rel " + fmt("%.2e", worst)};
}

Outcome criterion5() {
    double refl = 0.0, ident = 0.0, small = 0.0;
    bool ok = true;
    for (double nu : {0.1, 0.5, 1.0, 2.0, 5.0})
        refl = std::max(refl, rel(std::exp(2 * complex_log_gamma(cplx(0.0, nu)).real()) * nu * std::sinh(kPi * nu), kPi));
    for (double nu : {0.3, 1.0, 2.5})
        for (double x : {1e-2, 1e-4}) {
            double k = bessel_k_small_x(nu, x);
            ident = std::max(ident, rel(k * k, kPi / (nu * std::sinh(kPi * nu)) * std::pow(std::cos(gamma_phase(nu, x / 2)), 2)));
        }
    for (double nu : {0.3, 1.0}) {
        double e2 = rel(bessel_k_small_x(nu, 1e-2), bessel_k_imag_order(nu, 1e-2));
        double e4 = rel(bessel_k_small_x(nu, 1e-4), bessel_k_imag_order(nu, 1e-4));
        ok = ok && e2 < 1e-3 && e4 < 1e-5;
        small = std::max(small, e4);
    }
    ok = ok && refl < 1e-12 && ident < 1e-12;
    return {ok, "reflection " + fmt("%.1e", refl) + ", modulus identity " + fmt("%.1e", ident) +
                    ", small-x at 1e-4 " + fmt("%.1e", small)};
}

Outcome criterion6() {
    double worst_alpha = 0.0, worst_vac = 0.0;
    for (int i = 0; i < 8; ++i)
        for (double a : {0.7, 30.0})
            for (double z : {0.0, 0.4}) {
                PhysParams p;
                p.a = a;
                p.omega = 0.8;
                p.Omega = 1.2;
                p.z0 = z;
                p.theta = 1.2;
                p.kperp_dot_xperp = 0.3;
                p.alpha_k = 0.9;
                auto r0 = transition(sc(i), p);
                auto r1 = transition(sc(i), rescale_field(p, 10.0));
                worst_alpha = std::max({worst_alpha, rel(r1.p_alpha_ex, r0.p_alpha_ex), rel(r1.p_alpha_de, r0.p_alpha_de)});
                worst_vac = std::max({worst_vac, rel(r1.p_vac_ex, 0.1 * r0.p_vac_ex), rel(r1.p_vac_de, 0.1 * r0.p_vac_de)});
            }
    return {worst_alpha < 1e-12 && worst_vac < 1e-12,
            "P_alpha " + fmt("%.1e", worst_alpha) + ", P_vac vs 0.1x " + fmt("%.1e", worst_vac)};
}

Outcome criterion7() {
    double worst_coth = 0.0;
    for (double hd : {1.0, 0.3, 0.1})
        for (double a : {0.5, 2.0}) {
            ClassicalFieldParams cp;
            cp.delta_e = 1.0;
            cp.hbar_d = hd;
            cp.a = a;
            cp.f = 0.7;
            auto p = resonance_params(cp, 1e-6);
            double base = resonance_classical_1d(cp, Boundary::Free, Motion::Accelerated);
            double x = kPi * cp.delta_e / (2 * hd * a);
            worst_coth = std::max(worst_coth, rel(transition(sc(2), p).p_alpha_ex / base, 1.0 / std::tanh(x)));
        }
    ClassicalFieldParams cp;
    cp.delta_e = 1.0;
    cp.hbar_d = 0.1;
    cp.a = 1.0;  // dE / (hbar_d a) = 10
    cp.f = 0.7;
    auto p = resonance_params(cp, 1e-6);
    double base = resonance_classical_1d(cp, Boundary::Free, Motion::Accelerated);
    double acc = std::abs(transition(sc(2), p).p_alpha_ex / base - 1.0);
    double sta = std::abs(transition(sc(3), p).p_alpha_ex / base - 1.0);
    return {worst_coth < 1e-12 && acc < 1e-10 && sta < 1e-10,
            "coth " + fmt("%.1e", worst_coth) + ", |ratio-1| at 10: accel " + fmt("%.1e", acc) + ", static " +
                fmt("%.1e", sta)};
}

Outcome criterion8() {
    bool ok = true;
    std::string detail;
    for (int i = 4; i < 8; ++i) {
        ScenarioSpec s = sc(i);
        ClassicalFieldParams cp;
        cp.beta = beta_for(Dim::D3);
        cp.delta_e = 1.0;
        cp.hbar_d = 1.0;
        cp.theta = kPi / 3;
        cp.kperp_dot_xperp = 0.7;
        cp.z0 = s.boundary == Boundary::Free && s.motion == Motion::Static ? 0.0 : 0.2;
        double prev = INFINITY, gap = 0.0;
        for (double ratio : {1e-2, 3e-3, 1e-3}) {
            cp.a = 1.0 / ratio;
            double full = transition(s, resonance_params(cp, 1e-6)).p_alpha_ex;
            gap = rel(full, resonance_classical_3d(cp, s.boundary, s.motion).p_alpha);
            ok = ok && gap < prev;
            prev = gap;
        }
        ok = ok && gap < 5e-2;
        detail += (detail.empty() ? "" : ", ") + to_string(s.motion) + "/" + to_string(s.boundary) + " " +
                  fmt("%.1e", gap);
    }
    return {ok, detail};
}

Outcome criterion9() {
    auto pk = peak_analysis();
    bool ok = std::abs(pk.value_peak - 0.7246) < 1e-3 && std::abs(pk.y_peak - 1.1656) < 1e-3 &&
              std::abs(pk.first_zero - kPi) < 1e-10;
    return {ok, "peak " + fmt("%.6f", pk.value_peak) + " at y = " + fmt("%.6f", pk.y_peak) + ", first zero " +
                    fmt("%.12f", pk.first_zero)};
}

Outcome criterion10() {
    bool ok = true;
    double prev = INFINITY, gap = 0.0;
    std::string detail;
    for (double a : {50.0, 100.0, 200.0}) {
        PhysParams p;
        p.a = a;
        p.omega = p.Omega = 1.0;
        auto r = transition({Dim::D3, Motion::Accelerated, Boundary::Free}, p);
        gap = rel(r.p_vac_ex, *r.exact->p_vac_ex);
        ok = ok && gap < prev;
        prev = gap;
        detail += (detail.empty() ? "" : ", ") + ("a=" + fmt("%g", a) + " " + fmt("%.2e", gap));
    }
    return {ok && gap < 1e-3, detail};
}

}  // namespace

int main() {
    const QuadratureConfig cfg;
    auto t0 = std::chrono::steady_clock::now();
    std::printf("building oracle grid...\n");
    std::fflush(stdout);
    const auto grid = oracle_grid();
    std::printf("oracle grid done in %.1f s\n",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"oracle equivalence, 1+1", [&] { return criterion1(grid); }},
        {"detailed balance", criterion2},
        {"coherent symmetry", [&] { return criterion3(grid, cfg); }},
        {"resonance coincidence, 1+1", criterion4},
        {"special functions", criterion5},
        {"classical field limit", criterion6},
        {"classical detector limit, 1+1 free", criterion7},
        {"3+1 asymptotic consistency", criterion8},
        {"sin^2 y / y peak", criterion9},
        {"3+1 exact vs large-a vacuum", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

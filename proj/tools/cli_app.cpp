#include "cli_app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh/closedform.hpp"
#include "unruh/limits.hpp"
#include "unruh/oracle.hpp"

namespace unruh::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = MathConstants::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioOpts {
    int dim = 1;
    std::string motion = "accel";
    bool mirror = false;
    bool free = false;
    PhysParams p;
};

void add_scenario_options(CLI::App* cmd, ScenarioOpts& o) {
    cmd->add_option("--dim", o.dim, "Spacetime dimension: 1 for 1+1, 3 for 3+1")->check(CLI::IsMember({1, 3}));
    cmd->add_option("--motion", o.motion, "accel or static")
        ->check(CLI::IsMember({"accel", "accelerated", "static"}));
    auto* m = cmd->add_flag("--mirror", o.mirror, "Reflecting boundary present");
    auto* f = cmd->add_flag("--free", o.free, "No boundary (default)");
    m->excludes(f);
    cmd->add_option("--a", o.p.a, "Proper acceleration");
    cmd->add_option("--omega", o.p.omega, "Field mode frequency");
    cmd->add_option("--Omega", o.p.Omega, "Detector gap frequency");
    cmd->add_option("--z0", o.p.z0, "Mirror or atom offset");
    cmd->add_option("--theta", o.p.theta, "Polar angle of the mode (3+1 only)");
    cmd->add_option("--kx,--kperp-dot-xperp", o.p.kperp_dot_xperp, "Transverse phase k_perp . x_perp");
    cmd->add_option("--lambda", o.p.lambda, "Coupling");
    cmd->add_option("--alpha", o.p.alpha_k, "Coherent amplitude alpha_k");
    cmd->add_option("--hbar-f", o.p.hbar_f, "Field action constant");
    cmd->add_option("--hbar-d", o.p.hbar_d, "Detector action constant");
}

ScenarioSpec scenario_of(const ScenarioOpts& o) {
    ScenarioSpec s;
    s.dim = o.dim == 3 ? Dim::D3 : Dim::D1;
    s.motion = o.motion == "static" ? Motion::Static : Motion::Accelerated;
    s.boundary = o.mirror ? Boundary::Mirror : Boundary::Free;
    return s;
}

double* param_field(PhysParams& p, const std::string& name) {
    if (name == "a") return &p.a;
    if (name == "omega") return &p.omega;
    if (name == "Omega") return &p.Omega;
    if (name == "z0") return &p.z0;
    if (name == "theta") return &p.theta;
    if (name == "kperp_dot_xperp") return &p.kperp_dot_xperp;
    if (name == "lambda") return &p.lambda;
    if (name == "alpha_k") return &p.alpha_k;
    if (name == "hbar_f") return &p.hbar_f;
    if (name == "hbar_d") return &p.hbar_d;
    return nullptr;
}

const std::vector<std::string> kParamNames{"a",      "omega",   "Omega",  "z0",     "theta",
                                           "kperp_dot_xperp", "lambda", "alpha_k", "hbar_f", "hbar_d"};

double regime_threshold_from_env() {
    const char* v = std::getenv("UNRUH_REGIME_THRESHOLD");
    if (!v || !*v) return 0.1;
    char* end = nullptr;
    double t = std::strtod(v, &end);
    if (*end != '\0' || !(t > 0.0)) throw UsageError(std::string("invalid UNRUH_REGIME_THRESHOLD: ") + v);
    return t;
}

json scenario_json(const ScenarioSpec& s) {
    return {{"dim", to_string(s.dim)}, {"motion", to_string(s.motion)}, {"boundary", to_string(s.boundary)}};
}

json params_json(const PhysParams& p) {
    json j;
    PhysParams q = p;
    for (const auto& n : kParamNames) j[n] = *param_field(q, n);
    return j;
}

json result_json(const TransitionResult& r) {
    json j;
    j["p_vac_ex"] = r.p_vac_ex;
    j["p_vac_de"] = r.p_vac_de;
    j["p_alpha_ex"] = r.p_alpha_ex;
    j["p_alpha_de"] = r.p_alpha_de;
    j["regime_ok"] = r.regime_ok;
    j["regime_warning"] = r.regime_warning;
    j["warnings"] = r.warnings;
    if (r.exact) {
        json e;
        e["p_vac_ex"] = r.exact->p_vac_ex ? json(*r.exact->p_vac_ex) : json(nullptr);
        e["p_vac_de"] = r.exact->p_vac_de ? json(*r.exact->p_vac_de) : json(nullptr);
        e["p_alpha"] = r.exact->p_alpha;
        j["exact"] = e;
    } else {
        j["exact"] = nullptr;
    }
    return j;
}

json phases_json(const PhaseSet& ph) {
    auto v = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
    return {{"phi1", v(ph.phi1)}, {"phi2", v(ph.phi2)}, {"phi3", v(ph.phi3)},     {"phi4", v(ph.phi4)},
            {"phi", v(ph.phi)},   {"phi_ex", v(ph.phi_ex)}, {"psi1", v(ph.psi1)}, {"psi2", v(ph.psi2)}};
}

json amplitude_json(const AmplitudeResult& a) {
    return {{"re", a.value.real()},
            {"im", a.value.imag()},
            {"error_estimate", a.extrapolation_error_estimate},
            {"converged", a.converged}};
}

json config_json(const QuadratureConfig& cfg) {
    return {{"epsilon_ladder", cfg.epsilon_ladder}, {"t_max", cfg.t_max},
            {"tail_tol", cfg.tail_tol},             {"rel_tol", cfg.rel_tol},
            {"max_subdivisions", cfg.max_subdivisions}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::vector<std::string> all_warnings(const TransitionResult& r) {
    std::vector<std::string> w;
    if (!r.regime_warning.empty()) w.push_back(r.regime_warning);
    w.insert(w.end(), r.warnings.begin(), r.warnings.end());
    return w;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing " + path);
}

// Data goes to --out (plus a manifest beside it) or to standard output.
void emit(const std::string& path, const std::string& content, json manifest, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    write_file(path, content);
    manifest["output"] = path;
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

json manifest_base(const std::string& command, const std::vector<std::string>& args) {
    json m;
    m["tool"] = "unruh_cli";
    m["version"] = kVersion;
    m["command"] = command;
    m["arguments"] = std::vector<std::string>(args.begin() + 1, args.end());
    return m;
}

unsigned resolve_threads(int n, std::size_t work) {
    unsigned t = n > 0 ? static_cast<unsigned>(n) : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

// Runs f(i) for i in [0, n).  The first failure in index order is rethrown.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- eval

struct EvalOpts {
    ScenarioOpts sc;
    std::string format = "json";
    bool oracle = false;
};

int cmd_eval(const EvalOpts& o, std::ostream& out) {
    const ScenarioSpec s = scenario_of(o.sc);
    ClosedFormOptions opt{regime_threshold_from_env()};
    TransitionResult r = transition(s, o.sc.p, opt);
    PhaseSet ph = compute_phases(o.sc.p, s.dim);

    json j;
    j["scenario"] = scenario_json(s);
    j["params"] = params_json(o.sc.p);
    json rj = result_json(r);
    for (auto it = rj.begin(); it != rj.end(); ++it) j[it.key()] = it.value();
    j["phases"] = phases_json(ph);
    if (o.oracle) {
        NumericTransition n = p_numeric(s, o.sc.p);
        j["oracle"] = {{"p_vac_ex", n.probabilities.p_vac_ex},
                       {"p_vac_de", n.probabilities.p_vac_de},
                       {"p_alpha_ex", n.probabilities.p_alpha_ex},
                       {"p_alpha_de", n.probabilities.p_alpha_de},
                       {"converged", n.converged},
                       {"vac_ex", amplitude_json(n.vac_ex)},
                       {"vac_de", amplitude_json(n.vac_de)},
                       {"alpha_ex", amplitude_json(n.alpha_ex)},
                       {"alpha_de", amplitude_json(n.alpha_de)}};
    }

    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return kOk;
    }
    auto line = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(18) << k << v << "\n"; };
    line("scenario", to_string(s));
    line("p_vac_ex", format_double(r.p_vac_ex));
    line("p_vac_de", format_double(r.p_vac_de));
    line("p_alpha_ex", format_double(r.p_alpha_ex));
    line("p_alpha_de", format_double(r.p_alpha_de));
    if (r.exact) {
        if (r.exact->p_vac_ex) line("exact.p_vac_ex", format_double(*r.exact->p_vac_ex));
        if (r.exact->p_vac_de) line("exact.p_vac_de", format_double(*r.exact->p_vac_de));
        line("exact.p_alpha", format_double(r.exact->p_alpha));
    }
    for (const auto& [k, v] : j["phases"].items())
        if (!v.is_null()) line(k, format_double(v.get<double>()));
    if (o.oracle) {
        for (const char* k : {"p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"})
            line(std::string("oracle.") + k, format_double(j["oracle"][k].get<double>()));
        line("oracle.converged", j["oracle"]["converged"].get<bool>() ? "yes" : "no");
    }
    line("regime_ok", r.regime_ok ? "yes" : "no");
    for (const auto& w : all_warnings(r)) line("warning", w);
    return kOk;
}

// ---- sweep

struct SweepOpts {
    ScenarioOpts sc;
    std::vector<std::string> axes;
    std::string format = "csv";
    std::string out_path;
    bool ratio = false;
    bool keep_field = false;
    int threads = 0;
};

std::vector<std::pair<std::string, std::vector<double>>> parse_axes(const std::vector<std::string>& specs) {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    for (const auto& spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) throw UsageError("axis must look like name=v1,v2,...: " + spec);
        std::string name = spec.substr(0, eq);
        PhysParams probe;
        if (!param_field(probe, name)) throw UsageError("unknown axis parameter: " + name);
        for (const auto& a : axes)
            if (a.first == name) throw UsageError("axis given twice: " + name);
        std::vector<double> vals;
        std::stringstream ss(spec.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                vals.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw UsageError("bad value '" + item + "' for axis " + name);
            }
        }
        if (vals.empty()) throw UsageError("axis has no values: " + name);
        axes.emplace_back(name, vals);
    }
    return axes;
}

int cmd_sweep(const SweepOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioSpec s = scenario_of(o.sc);
    const auto axes = parse_axes(o.axes);
    ClosedFormOptions opt{regime_threshold_from_env()};

    // Cartesian product, first axis outermost.
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.second.size();
    std::vector<PhysParams> grid(n, o.sc.p);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rem = i;
        for (std::size_t k = axes.size(); k-- > 0;) {
            const auto& vals = axes[k].second;
            *param_field(grid[i], axes[k].first) = vals[rem % vals.size()];
            rem /= vals.size();
        }
        if (o.keep_field) {
            const double field = o.sc.p.alpha_k * o.sc.p.alpha_k * o.sc.p.hbar_f;
            grid[i].alpha_k = std::sqrt(field / grid[i].hbar_f);
        }
    }

    std::vector<TransitionResult> results(n);
    parallel_for(n, resolve_threads(o.threads, n), [&](std::size_t i) { results[i] = transition(s, grid[i], opt); });

    std::ostringstream data;
    if (o.format == "csv") {
        data << join(kParamNames, ",") << ",p_vac_ex,p_vac_de,p_alpha_ex,p_alpha_de,regime_ok,warnings";
        if (o.ratio) data << ",vac_ratio";
        data << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& name : kParamNames) data << format_double(*param_field(grid[i], name)) << ",";
            const auto& r = results[i];
            data << format_double(r.p_vac_ex) << "," << format_double(r.p_vac_de) << ","
                 << format_double(r.p_alpha_ex) << "," << format_double(r.p_alpha_de) << ","
                 << (r.regime_ok ? "true" : "false") << "," << csv_field(join(all_warnings(r), "; "));
            if (o.ratio) data << "," << format_double(r.p_vac_ex / r.p_vac_de);
            data << "\n";
        }
    } else {
        json j;
        j["scenario"] = scenario_json(s);
        j["points"] = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json pt;
            pt["params"] = params_json(grid[i]);
            json rj = result_json(results[i]);
            for (auto it = rj.begin(); it != rj.end(); ++it) pt[it.key()] = it.value();
            if (o.ratio) pt["vac_ratio"] = results[i].p_vac_ex / results[i].p_vac_de;
            j["points"].push_back(pt);
        }
        data << j.dump(2) << "\n";
    }

    json m = manifest_base("sweep", args);
    m["scenario"] = scenario_json(s);
    m["base_params"] = params_json(o.sc.p);
    json ax = json::object();
    for (const auto& a : axes) ax[a.first] = a.second;
    m["grid"] = {{"axes", ax}, {"points", n}, {"order", "first axis outermost"}};
    m["format"] = o.format;
    m["regime_threshold"] = opt.regime_threshold;
    std::vector<bool> flags;
    for (const auto& r : results) flags.push_back(r.regime_ok);
    m["regime_ok"] = flags;
    m["wall_time_s"] = seconds_since(t0);
    emit(o.out_path, data.str(), m, out);
    return kOk;
}

// ---- verify

struct VerifyOpts {
    std::string preset;
    bool strict = false;
    double tol = 0.0;
    std::string format = "text";
    std::string out_path;
    int threads = 0;
};

struct VerifyRow {
    std::string name;
    double deviation = 0.0;
    double tol = 0.0;
    int points = 0;
    std::vector<std::string> non_converged;
    std::string note;
    bool pass() const { return deviation <= tol; }
};

double rel_dev(double got, double ref) {
    if (got == ref) return 0.0;
    return std::abs(got - ref) / std::max(std::abs(ref), 1e-300);
}

std::string point_label(const PhysParams& p, Dim dim) {
    std::ostringstream os;
    os << "a=" << p.a << " omega=" << p.omega << " Omega=" << p.Omega << " z0=" << p.z0;
    if (dim == Dim::D3) os << " theta=" << p.theta << " kx=" << p.kperp_dot_xperp;
    return os.str();
}

struct OracleTask {
    ScenarioSpec s;
    PhysParams p;
    std::size_t row;
    bool exact_only = false;  // compare against the Bessel branch
    bool alpha_only = false;
};

void run_oracle_tasks(const std::vector<OracleTask>& tasks, std::vector<VerifyRow>& rows, const QuadratureConfig& cfg,
                      unsigned threads, std::vector<bool>& conv) {
    std::vector<double> dev(tasks.size(), 0.0);
    conv.assign(tasks.size(), true);
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& t = tasks[i];
        TransitionResult c = transition(t.s, t.p);
        NumericTransition n = p_numeric(t.s, t.p, cfg);
        conv[i] = n.converged;
        std::vector<std::pair<double, double>> pairs;
        if (t.exact_only) {
            pairs.push_back({n.probabilities.p_alpha_ex, c.exact->p_alpha});
            pairs.push_back({n.probabilities.p_alpha_de, c.exact->p_alpha});
            if (!t.alpha_only) {
                pairs.push_back({n.probabilities.p_vac_ex, *c.exact->p_vac_ex});
                pairs.push_back({n.probabilities.p_vac_de, *c.exact->p_vac_de});
            }
        } else {
            pairs = {{n.probabilities.p_vac_ex, c.p_vac_ex},
                     {n.probabilities.p_vac_de, c.p_vac_de},
                     {n.probabilities.p_alpha_ex, c.p_alpha_ex},
                     {n.probabilities.p_alpha_de, c.p_alpha_de}};
        }
        for (const auto& [got, ref] : pairs) dev[i] = std::max(dev[i], rel_dev(got, ref));
    });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto& row = rows[tasks[i].row];
        ++row.points;
        if (!conv[i]) {
            row.non_converged.push_back(point_label(tasks[i].p, tasks[i].s.dim));
            continue;
        }
        row.deviation = std::max(row.deviation, dev[i]);
    }
}

std::vector<VerifyRow> verify_d1(const QuadratureConfig& cfg, double tol, unsigned threads, std::vector<bool>& conv) {
    std::vector<VerifyRow> rows;
    std::vector<OracleTask> tasks;
    for (Boundary b : {Boundary::Mirror, Boundary::Free})
        for (Motion m : {Motion::Accelerated, Motion::Static}) {
            ScenarioSpec s{Dim::D1, m, b};
            rows.push_back({to_string(s) + " oracle", 0.0, tol, 0, {}, "max relative deviation, four probabilities"});
            std::vector<double> z0s = b == Boundary::Mirror ? std::vector<double>{0.0, 0.3, 1.0} : std::vector<double>{0.0};
            for (double a : {0.5, 1.0, 2.0})
                for (double w : {0.5, 1.0})
                    for (double W : {0.5, 1.0, 2.0})
                        for (double z : z0s) {
                            PhysParams p;
                            p.a = a;
                            p.omega = w;
                            p.Omega = W;
                            p.z0 = z;
                            tasks.push_back({s, p, rows.size() - 1});
                        }
        }
    run_oracle_tasks(tasks, rows, cfg, threads, conv);
    return rows;
}

std::vector<VerifyRow> verify_d3(const QuadratureConfig& cfg, double tol, unsigned threads, std::vector<bool>& conv) {
    std::vector<VerifyRow> rows;

    // Bessel-exact against large-acceleration vacuum probability at omega = Omega = 1.
    VerifyRow gap{"3+1/accel/free exact-vs-asymptotic vacuum gap", 0.0, 1e-3, 0, {}, ""};
    std::vector<double> gaps;
    std::ostringstream note;
    for (double a : {50.0, 100.0, 200.0}) {
        PhysParams p;
        p.a = a;
        TransitionResult r = transition({Dim::D3, Motion::Accelerated, Boundary::Free}, p);
        gaps.push_back(rel_dev(r.p_vac_ex, *r.exact->p_vac_ex));
        note << (gaps.size() > 1 ? ", " : "") << "a=" << a << ": " << std::setprecision(3) << gaps.back();
        ++gap.points;
    }
    bool shrinking = gaps[1] < gaps[0] && gaps[2] < gaps[1];
    gap.deviation = shrinking ? gaps.back() : INFINITY;
    gap.note = note.str() + (shrinking ? "" : " (not decreasing)");
    rows.push_back(gap);

    std::vector<OracleTask> tasks;
    PhysParams p1;
    p1.a = 10.0;
    p1.theta = 1.0;
    p1.kperp_dot_xperp = 0.4;
    p1.z0 = 0.2;
    PhysParams p2;
    p2.a = 20.0;
    p2.omega = 0.5;
    p2.Omega = 1.5;
    p2.theta = 2.0;
    p2.kperp_dot_xperp = 1.1;
    p2.z0 = 0.5;
    for (Boundary b : {Boundary::Mirror, Boundary::Free})
        for (Motion m : {Motion::Accelerated, Motion::Static}) {
            ScenarioSpec s{Dim::D3, m, b};
            const bool accel = m == Motion::Accelerated;
            std::string what = accel ? (b == Boundary::Mirror ? "Bessel-branch P_alpha" : "Bessel-branch probabilities")
                                     : "four probabilities";
            rows.push_back({to_string(s) + " oracle", 0.0, tol, 0, {}, "max relative deviation, " + what});
            for (const auto& p : {p1, p2})
                tasks.push_back({s, p, rows.size() - 1, accel, accel && b == Boundary::Mirror});
        }
    run_oracle_tasks(tasks, rows, cfg, threads, conv);
    return rows;
}

std::vector<VerifyRow> verify_special() {
    std::vector<VerifyRow> rows;

    VerifyRow refl{"|Gamma(i nu)|^2 nu sinh(pi nu) = pi", 0.0, 1e-12, 0, {}, "nu in {0.1, 0.5, 1, 2, 5}"};
    for (double nu : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        double lhs = std::exp(2.0 * complex_log_gamma(cplx(0.0, nu)).real()) * nu * std::sinh(kPi * nu);
        refl.deviation = std::max(refl.deviation, rel_dev(lhs, kPi));
        ++refl.points;
    }
    rows.push_back(refl);

    VerifyRow ident{"small-x K^2 = pi cos^2(phi3) / (nu sinh(pi nu))", 0.0, 1e-12, 0, {}, "nu in {0.3, 1, 2}"};
    for (double nu : {0.3, 1.0, 2.0})
        for (double x : {1e-4, 1e-2, 0.05}) {
            double k = bessel_k_small_x(nu, x);
            double rhs = kPi / (nu * std::sinh(kPi * nu)) * std::pow(std::cos(gamma_phase(nu, x / 2.0)), 2);
            ident.deviation = std::max(ident.deviation, rel_dev(k * k, rhs));
            ++ident.points;
        }
    rows.push_back(ident);

    for (auto [x, tol] : {std::pair{1e-2, 1e-3}, std::pair{1e-4, 1e-5}}) {
        std::ostringstream name;
        name << "K_{i nu}(x) integral vs small-x form, x=" << x;
        VerifyRow r{name.str(), 0.0, tol, 0, {}, "nu in {0.3, 1}"};
        for (double nu : {0.3, 1.0}) {
            r.deviation = std::max(r.deviation, rel_dev(bessel_k_small_x(nu, x), bessel_k_imag_order(nu, x)));
            ++r.points;
        }
        rows.push_back(r);
    }

    VerifyRow orc{"K_{i nu}(x) cosh integral vs scaled-argument quadrature", 0.0, 1e-8, 0, {}, ""};
    for (double nu : {0.3, 1.0, 2.5})
        for (double x : {0.05, 0.5, 2.0}) {
            orc.deviation = std::max(orc.deviation, rel_dev(bessel_oracle(nu, x / 2.0, 2.0), bessel_k_imag_order(nu, x)));
            ++orc.points;
        }
    rows.push_back(orc);
    return rows;
}

int cmd_verify(const VerifyOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    QuadratureConfig cfg;
    std::vector<VerifyRow> rows;
    std::vector<bool> conv;
    const double tol = o.tol > 0.0 ? o.tol : 1e-4;
    const unsigned threads = resolve_threads(o.threads, 1u << 16);
    if (o.preset == "d1-standard") rows = verify_d1(cfg, tol, threads, conv);
    else if (o.preset == "d3-asymptotic") rows = verify_d3(cfg, tol, threads, conv);
    else rows = verify_special();
    if (o.preset == "special-fns" && o.tol > 0.0)
        for (auto& r : rows) r.tol = o.tol;

    bool ok = true;
    std::size_t excluded = 0;
    for (const auto& r : rows) {
        ok = ok && r.pass();
        excluded += r.non_converged.size();
    }
    if (o.strict && excluded > 0) ok = false;

    json report;
    report["preset"] = o.preset;
    report["passed"] = ok;
    report["rows"] = json::array();
    for (const auto& r : rows)
        report["rows"].push_back({{"check", r.name},
                                  {"max_relative_deviation", r.deviation},
                                  {"tolerance", r.tol},
                                  {"points", r.points},
                                  {"non_converged", r.non_converged},
                                  {"passed", r.pass()},
                                  {"note", r.note}});

    std::ostringstream data;
    if (o.format == "json") {
        data << report.dump(2) << "\n";
    } else {
        data << "preset " << o.preset << "\n";
        for (const auto& r : rows) {
            data << (r.pass() ? "[ok]   " : "[FAIL] ") << std::left << std::setw(56) << r.name << " dev "
                 << std::setprecision(3) << std::scientific << r.deviation << " tol " << r.tol << std::defaultfloat
                 << " points " << r.points;
            if (!r.note.empty()) data << "  (" << r.note << ")";
            data << "\n";
            for (const auto& nc : r.non_converged) data << "       not converged, excluded: " << nc << "\n";
        }
        data << (ok ? "verification passed" : "verification FAILED") << "\n";
    }

    json m = manifest_base("verify", args);
    m["preset"] = o.preset;
    m["quadrature"] = config_json(cfg);
    m["strict_convergence"] = o.strict;
    std::vector<bool> flags(conv.begin(), conv.end());
    m["converged"] = flags;
    m["wall_time_s"] = seconds_since(t0);
    emit(o.out_path, data.str(), m, out);
    if (!o.out_path.empty()) out << (ok ? "verification passed" : "verification FAILED") << "\n";
    return ok ? kOk : kVerifyFailed;
}

// ---- figure

struct FigureOpts {
    std::string name;
    int resolution = 400;
    std::string format = "csv";
    std::string out_path;
};

int cmd_figure(const FigureOpts& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    if (o.resolution < 1) throw UsageError("--resolution must be at least 1");
    PeakReport pk = peak_analysis();
    const int n = o.resolution;
    json peak = {{"y_peak", pk.y_peak}, {"value_peak", pk.value_peak}, {"first_zero", pk.first_zero}};

    std::ostringstream data;
    if (o.format == "csv") {
        data << "y,Y\n";
        for (int i = 1; i <= n; ++i) {
            double y = 4.0 * kPi * i / n;
            data << format_double(y) << "," << format_double(y_function(y)) << "\n";
        }
    } else {
        json j;
        j["figure"] = o.name;
        j["peak"] = peak;
        j["points"] = json::array();
        for (int i = 1; i <= n; ++i) {
            double y = 4.0 * kPi * i / n;
            j["points"].push_back({y, y_function(y)});
        }
        data << j.dump(2) << "\n";
    }

    json m = manifest_base("figure", args);
    m["figure"] = o.name;
    m["grid"] = {{"y_min", 4.0 * kPi / n}, {"y_max", 4.0 * kPi}, {"points", n}};
    m["peak"] = peak;
    m["wall_time_s"] = seconds_since(t0);
    emit(o.out_path, data.str(), m, out);
    if (o.format == "csv") {
        std::ostream& s = o.out_path.empty() ? err : out;
        s << "peak " << format_double(pk.value_peak) << " at y = " << format_double(pk.y_peak) << ", first zero "
          << format_double(pk.first_zero) << "\n";
    }
    return kOk;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-level detector transition probabilities in a coherent scalar field"};
    app.name(args.empty() ? "unruh_cli" : args[0]);
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    EvalOpts eval;
    auto* ev = app.add_subcommand("eval", "Closed-form probabilities at one parameter point");
    add_scenario_options(ev, eval.sc);
    ev->add_option("--format", eval.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    ev->add_flag("--oracle", eval.oracle, "Also evaluate the quadrature oracle");

    SweepOpts sweep;
    auto* sw = app.add_subcommand("sweep", "Cartesian parameter sweep");
    add_scenario_options(sw, sweep.sc);
    sw->add_option("--axis", sweep.axes, "name=v1,v2,... (repeatable)")->required();
    sw->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--out", sweep.out_path, "Output file (a manifest is written beside it)");
    sw->add_flag("--ratio", sweep.ratio, "Add p_vac_ex / p_vac_de");
    sw->add_flag("--keep-field-strength", sweep.keep_field, "Rescale alpha_k so alpha_k^2 hbar_f stays fixed");
    sw->add_option("--threads", sweep.threads, "Worker threads, 0 = auto")->check(CLI::NonNegativeNumber);

    VerifyOpts verify;
    auto* vf = app.add_subcommand("verify", "Cross-check closed forms against the oracle");
    vf->add_option("--preset", verify.preset, "d1-standard, d3-asymptotic or special-fns")
        ->required()
        ->check(CLI::IsMember({"d1-standard", "d3-asymptotic", "special-fns"}));
    vf->add_flag("--strict-convergence", verify.strict, "Fail when any oracle point does not converge");
    vf->add_option("--tol", verify.tol, "Override the relative tolerance")->check(CLI::PositiveNumber);
    vf->add_option("--format", verify.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    vf->add_option("--out", verify.out_path, "Report file (a manifest is written beside it)");
    vf->add_option("--threads", verify.threads, "Worker threads, 0 = auto")->check(CLI::NonNegativeNumber);

    FigureOpts fig;
    auto* fg = app.add_subcommand("figure", "Plot data");
    fg->add_option("name", fig.name, "Figure name")->required()->check(CLI::IsMember({"y-peak"}));
    fg->add_option("--resolution", fig.resolution, "Number of points on (0, 4 pi]");
    fg->add_option("--format", fig.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    fg->add_option("--out", fig.out_path, "Output file (a manifest is written beside it)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*ev) return cmd_eval(eval, out);
        if (*sw) return cmd_sweep(sweep, args, out);
        if (*vf) return cmd_verify(verify, args, out);
        if (*fg) return cmd_figure(fig, args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}

}  // namespace unruh::cli

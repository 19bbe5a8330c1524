// Command-line surface of the toolkit: series dumps, pointwise evaluation,
// complex-path integration, Frobenius-manifold data, projective-connection
// data, and the verification suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halphen/connections.hpp"
#include "halphen/dynamics.hpp"
#include "halphen/elliptic.hpp"
#include "halphen/frobenius.hpp"
#include "halphen/jsonio.hpp"
#include "halphen/qseries.hpp"
#include "halphen/verify.hpp"

namespace {

using halphen::QSeries;
using halphen::jsonio::complex_json;
using halphen::jsonio::Json;
using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
constexpr const char* kSchema = "halphen-lab/1";

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("complex values are written RE,IM");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::size_t max_steps_from_env(std::size_t fallback) {
    if (const char* env = std::getenv("HALPHEN_MAX_STEPS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return fallback;
}

void emit(const Json& j) { std::cout << halphen::jsonio::dump(j, 2); }

int weight_of(const std::string& name) {
    if (name == "E2") return 2;
    if (name == "E4") return 4;
    if (name == "E6") return 6;
    throw CLI::ValidationError("--name must be E2, E4 or E6");
}

int cmd_series(const std::string& name, int order, const std::string& format) {
    const QSeries s = halphen::eisenstein(weight_of(name), order);
    if (format == "csv") {
        for (int n = 0; n <= s.order(); ++n)
            std::cout << n << ',' << halphen::num_string(s.coeff(n)) << ','
                      << halphen::den_string(s.coeff(n)) << '\n';
        return 0;
    }
    Json j;
    j["schema"] = kSchema;
    j["name"] = name;
    j["order"] = order;
    Json rows = Json::array();
    for (int n = 0; n <= s.order(); ++n) {
        Json row;
        row["n"] = n;
        row["numerator"] = halphen::num_string(s.coeff(n));
        row["denominator"] = halphen::den_string(s.coeff(n));
        rows.push_back(row);
    }
    j["coefficients"] = rows;
    emit(j);
    return 0;
}

int cmd_eval(const std::string& fn, Complex tau, Complex z, const std::string& char_spec,
             double tol, int order) {
    Json j;
    j["schema"] = kSchema;
    j["fn"] = fn;
    j["tau"] = complex_json(tau);
    if (fn == "theta") {
        if (char_spec.size() != 3 || char_spec[1] != ',')
            throw CLI::ValidationError("--char is written EPS,DELTA with entries 0 or 1");
        const halphen::elliptic::ThetaChar ch{char_spec[0] - '0', char_spec[2] - '0'};
        j["z"] = complex_json(z);
        j["char"] = Json::array({ch.eps, ch.delta});
        j["value"] = complex_json(halphen::elliptic::theta_char(ch, z, tau, tol));
    } else if (fn == "wp") {
        j["z"] = complex_json(z);
        j["value"] = complex_json(halphen::elliptic::wp(z, tau, tol));
    } else if (fn == "ek") {
        const auto c = halphen::elliptic::elliptic_constants(tau, tol, order);
        j["value"] = Json::array({complex_json(c.e1), complex_json(c.e2), complex_json(c.e3)});
        j["g2"] = complex_json(c.g2);
        j["g3"] = complex_json(c.g3);
    } else if (fn == "eta1") {
        j["value"] = complex_json(halphen::elliptic::elliptic_constants(tau, tol, order).eta1);
    } else if (fn == "E2" || fn == "E4" || fn == "E6") {
        const auto r = halphen::eisenstein(weight_of(fn), order).eval(tau);
        j["value"] = complex_json(r.value);
        j["tail_bound"] = r.tail_bound;
    } else {
        throw CLI::ValidationError("--fn must be theta, wp, ek, eta1, E2, E4 or E6");
    }
    emit(j);
    return 0;
}

struct SystemSpec {
    // scaling t = time_scale * tau for the tau-path convenience
    Complex time_scale;
    halphen::dynamics::RhsFn rhs;
    std::function<halphen::dynamics::Vec(Complex tau, int order)> default_init;
};

SystemSpec system_spec(const std::string& name) {
    using namespace halphen::dynamics;
    auto series_state = [](Complex tau, int order) {
        return Vec{halphen::eisenstein(2, order).eval(tau).value,
                   halphen::eisenstein(4, order).eval(tau).value,
                   halphen::eisenstein(6, order).eval(tau).value};
    };
    if (name == "ramanujan")
        return {-2.0 * kPi * kI,
                [](const Vec& v) { return to_vec(ramanujan_rhs(state3_from_vec(v))); },
                series_state};
    if (name == "rescaled")
        return {4.0 * kI / kPi,
                [](const Vec& v) { return to_vec(rescaled_rhs(state3_from_vec(v))); },
                [&, series_state](Complex tau, int order) {
                    const Vec e = series_state(tau, order);
                    return Vec{kPi * kPi / 12.0 * e[0], std::pow(kPi, 4) / 12.0 * e[1],
                               std::pow(kPi, 6) / 216.0 * e[2]};
                }};
    if (name == "halphen")
        return {Complex(1.0, 0.0),
                [](const Vec& v) { return to_vec(halphen_rhs(state3_from_vec(v))); },
                [](Complex tau, int order) {
                    const auto r = halphen::frobenius::chazy_cubic_roots(tau, order);
                    return Vec{r[0], r[1], r[2]};
                }};
    if (name == "chazy")
        return {Complex(1.0, 0.0),
                [](const Vec& v) { return to_vec(chazy_rhs(chazy_from_vec(v))); },
                [](Complex tau, int order) {
                    const auto jet = halphen::frobenius::gamma_data(tau, order);
                    return Vec{jet.g, jet.d1, jet.d2};
                }};
    if (name == "lifted")
        return {4.0 * kI / kPi,
                [](const Vec& v) { return to_vec(lifted_rhs(state4_from_vec(v))); },
                [series_state](Complex tau, int order) {
                    const Vec e = series_state(tau, order);
                    return Vec{kPi * kPi / 12.0 * e[0], std::pow(kPi, 4) / 12.0 * e[1],
                               std::pow(kPi, 6) / 216.0 * e[2], Complex(1.0, 0.0)};
                }};
    throw CLI::ValidationError("--system must be ramanujan, rescaled, halphen, chazy or lifted");
}

int cmd_integrate(const std::string& system, Complex from, Complex to, const std::string& init,
                  double atol, double rtol, int order) {
    const SystemSpec spec = system_spec(system);
    halphen::dynamics::Vec y0;
    if (init.empty()) {
        y0 = spec.default_init(from, order);
    } else {
        for (const auto& el : Json::parse(init)) y0.push_back(halphen::jsonio::complex_from_json(el));
    }
    halphen::dynamics::IntegratorConfig cfg;
    cfg.atol = atol;
    cfg.rtol = rtol;
    cfg.max_steps = max_steps_from_env(cfg.max_steps);

    Json j;
    j["schema"] = kSchema;
    j["system"] = system;
    j["from"] = complex_json(from);
    j["to"] = complex_json(to);
    if (from == to) {  // zero-length path: nothing to do
        Json state = Json::array();
        for (const auto& c : y0) state.push_back(complex_json(c));
        j["endpoint"] = state;
        j["accepted"] = 0;
        j["rejected"] = 0;
        j["samples"] = 1;
        j["completed"] = true;
        emit(j);
        return 0;
    }
    const auto traj = halphen::dynamics::integrate(
        spec.rhs, y0, {spec.time_scale * from, spec.time_scale * to}, cfg);
    Json state = Json::array();
    for (const auto& c : traj.endpoint()) state.push_back(complex_json(c));
    j["endpoint"] = state;
    j["accepted"] = static_cast<std::int64_t>(traj.accepted);
    j["rejected"] = static_cast<std::int64_t>(traj.rejected);
    j["samples"] = static_cast<std::int64_t>(traj.samples.size());
    j["completed"] = traj.completed;
    if (!traj.completed) j["failure"] = traj.failure;
    emit(j);
    return traj.completed ? 0 : 1;
}

Json mat_json(const halphen::frobenius::Mat3& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(complex_json(c));
        rows.push_back(r);
    }
    return rows;
}

int cmd_frobenius(Complex t1, Complex t2, Complex t3, int order) {
    using namespace halphen::frobenius;
    const FlatPoint p{t1, t2, t3};
    Json j;
    j["schema"] = kSchema;
    j["t"] = Json::array({complex_json(t1), complex_json(t2), complex_json(t3)});
    j["order"] = order;
    j["F"] = complex_json(potential_F(p, order));

    const Tensor3 c = structure_constants(p, order);
    Json ct = Json::array();
    for (const auto& m : c) ct.push_back(mat_json(m));
    j["C"] = ct;
    j["g"] = mat_json(intersection_form(p, order));

    const auto cp = char_poly(p, order);
    j["charpoly"] = Json::array(
        {complex_json(cp[0]), complex_json(cp[1]), complex_json(cp[2]), complex_json(cp[3])});

    const auto u = canonical_coords(p, order);
    j["u"] = Json::array({complex_json(u[0]), complex_json(u[1]), complex_json(u[2])});

    const auto cb = change_of_basis(p, order);
    j["M"] = mat_json(cb.m);

    double root_residual = 0.0;
    double scale = 0.0;
    for (const auto& cc : cp) scale = std::max(scale, std::abs(cc));
    for (const auto& uk : u) {
        const Complex val = ((uk + cp[1]) * uk + cp[2]) * uk + cp[3];
        root_residual = std::max(root_residual, std::abs(val) / scale);
    }
    Json residuals;
    residuals["charpoly_roots"] = root_residual;
    residuals["associativity"] = associativity_check(p, order);
    residuals["wdvv"] = std::abs(wdvv_residual(p, order));
    residuals["change_of_basis_fd"] = cb.fd_deviation;
    residuals["change_of_basis_fd_literal_row3"] = cb.fd_deviation_literal;
    j["residuals"] = residuals;
    emit(j);
    return 0;
}

int cmd_connections(Complex tau, double tol, int order) {
    using halphen::elliptic::ThetaChar;
    Json j;
    j["schema"] = kSchema;
    j["tau"] = complex_json(tau);
    Json w = Json::array();
    for (const ThetaChar ch : {ThetaChar{0, 0}, ThetaChar{1, 0}, ThetaChar{0, 1}}) {
        Json e;
        e["char"] = Json::array({ch.eps, ch.delta});
        e["value"] =
            complex_json(halphen::connections::wirtinger_connection(ch, tau, 1e-14, order));
        w.push_back(e);
    }
    j["wirtinger"] = w;
    j["klein_invariant"] =
        complex_json(halphen::connections::klein_invariant_connection(tau, 1e-14, order));
    const auto cur = halphen::connections::affine_curvature(tau, order);
    Json curvature;
    curvature["value"] = complex_json(cur.value);
    curvature["series_identity_exact"] = cur.exact;
    j["curvature"] = curvature;

    Json serre;
    const auto e4 = halphen::eisenstein(4, order);
    const auto e6 = halphen::eisenstein(6, order);
    serre["serre2_E4_is_minus_E6_over_3"] =
        (halphen::connections::serre_derivative(2, e4) - e6.scaled(halphen::frac(-1, 3)))
            .is_zero();
    serre["serre3_E6_is_minus_E4sq_over_2"] =
        (halphen::connections::serre_derivative(3, e6) -
         (e4 * e4).scaled(halphen::frac(-1, 2)))
            .is_zero();
    j["serre_checks"] = serre;
    (void)tol;
    emit(j);
    return 0;
}

int cmd_verify(const std::string& suite, const halphen::verify::Config& cfg, bool json,
               bool timings) {
    const auto report = halphen::verify::run_suite(suite, cfg);
    if (json) {
        emit(halphen::verify::to_json(report, timings));
    } else {
        for (const auto& c : report.checks) {
            std::printf("[%s] %-45s residual=%-12.3e tol=%-9.1e %s\n",
                        c.status == "fail" ? "FAIL" : c.status == "flagged" ? "FLAG" : "PASS",
                        c.id.c_str(), c.residual, c.tolerance, c.note.c_str());
        }
        std::printf("%s: %zu checks, %s\n", suite.c_str(), report.checks.size(),
                    report.all_pass() ? "all passed" : "FAILURES present");
    }
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale toolkit for the Darboux-Halphen/Ramanujan circle of identities"};
    app.require_subcommand(1);

    int order = 64;
    double tol = 1e-8;
    bool json = false;
    app.add_option("--order", order, "series truncation order")->capture_default_str();
    app.add_option("--tol", tol, "evaluation tolerance")->capture_default_str();
    app.add_flag("--json", json, "emit JSON");
    app.fallthrough();

    auto* series = app.add_subcommand("series", "dump Eisenstein coefficients");
    std::string name = "E2", format = "csv";
    series->add_option("--name", name, "E2, E4 or E6")->required();
    series->add_option("--format", format, "csv or json");

    auto* eval = app.add_subcommand("eval", "evaluate special functions at a point");
    std::string fn = "wp", tau_s = "0,2", z_s = "0.25,0.25", char_s = "0,0";
    eval->add_option("--fn", fn, "theta | wp | ek | eta1 | E2 | E4 | E6")->required();
    eval->add_option("--tau", tau_s, "point in the upper half plane, RE,IM");
    eval->add_option("--z", z_s, "argument, RE,IM");
    eval->add_option("--char", char_s, "theta characteristic, EPS,DELTA");

    auto* integ = app.add_subcommand("integrate", "integrate a flow along a tau-path");
    std::string system = "ramanujan", from_s = "0,2", to_s = "0.3,2", init;
    double atol = 1e-10, rtol = 1e-10;
    integ->add_option("--system", system, "ramanujan | rescaled | halphen | chazy | lifted")
        ->required();
    integ->add_option("--from", from_s, "starting tau, RE,IM");
    integ->add_option("--to", to_s, "final tau, RE,IM");
    integ->add_option("--init", init, "initial state as JSON [{\"re\":..,\"im\":..},..]");
    integ->add_option("--atol", atol, "absolute tolerance")->capture_default_str();
    integ->add_option("--rtol", rtol, "relative tolerance")->capture_default_str();

    auto* frob = app.add_subcommand("frobenius", "Frobenius-manifold data at a flat point");
    std::string t1_s = "0,0", t2_s = "1,0", t3_s = "0,2";
    frob->add_option("--t1", t1_s, "RE,IM");
    frob->add_option("--t2", t2_s, "RE,IM (nonzero)");
    frob->add_option("--t3", t3_s, "RE,IM with IM > 0");

    auto* conn = app.add_subcommand("connections", "projective-connection data at tau");
    std::string ctau_s = "0,2";
    conn->add_option("--tau", ctau_s, "RE,IM");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all", vtau_s = "0,2";
    bool timings = false;
    verify->add_option("--suite", suite, "ramanujan | chazy | riccati | halphen | frobenius | "
                                         "hamiltonian | connections | all");
    verify->add_option("--tau", vtau_s, "base point, RE,IM");
    verify->add_flag("--timings", timings, "include runtime_ms in the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (series->parsed()) return cmd_series(name, order, format);
        if (eval->parsed())
            return cmd_eval(fn, parse_complex(tau_s), parse_complex(z_s), char_s, tol, order);
        if (integ->parsed())
            return cmd_integrate(system, parse_complex(from_s), parse_complex(to_s), init, atol,
                                 rtol, order);
        if (frob->parsed())
            return cmd_frobenius(parse_complex(t1_s), parse_complex(t2_s), parse_complex(t3_s),
                                 order);
        if (conn->parsed()) return cmd_connections(parse_complex(ctau_s), tol, order);
        if (verify->parsed()) {
            halphen::verify::Config cfg;
            cfg.order = order;
            cfg.tol = tol;
            cfg.tau = parse_complex(vtau_s);
            cfg.max_steps = max_steps_from_env(cfg.max_steps);
            const auto& names = halphen::verify::suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "unknown suite: " << suite << '\n';
                return 2;
            }
            return cmd_verify(suite, cfg, json, timings);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;  // bad arguments are usage errors
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

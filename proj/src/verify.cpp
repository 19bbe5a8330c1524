#include "halphen/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "halphen/connections.hpp"
#include "halphen/dynamics.hpp"
#include "halphen/elliptic.hpp"
#include "halphen/frobenius.hpp"
#include "halphen/qseries.hpp"

namespace halphen::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

struct Outcome {
    double residual = 0.0;
    std::string note;
    bool flagged = false;
};

template <class F>
void run_check(Report& rep, const std::string& id, const std::string& ref, double tolerance, F&& f) {
    Check c;
    c.id = id;
    c.ref = ref;
    c.tolerance = tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome out = f();
        c.residual = out.residual;
        c.note = out.note;
        c.status = (out.residual <= tolerance) ? (out.flagged ? "flagged" : "pass") : "fail";
    } catch (const std::exception& e) {
        c.residual = std::numeric_limits<double>::infinity();
        c.status = "fail";
        c.note = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    c.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.checks.push_back(std::move(c));
}

double series_max_abs(const QSeries& s) {
    double m = 0.0;
    for (const auto& c : s.coeffs()) m = std::max(m, std::fabs(to_double(c)));
    return m;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// tau-derivative of a complex map: central differences with one Richardson
// pass, h = 1e-4.
template <class F>
Complex fd_tau(F&& f, Complex tau, double h = 1e-4) {
    auto central = [&](double step) { return (f(tau + step) - f(tau - step)) / (2.0 * step); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

std::mt19937 seeded_rng(unsigned salt) { return std::mt19937(0x5eed0000u + salt); }

Complex random_complex(std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng)};
}

// uniform stride-based derivative along a sampled curve, Richardson once
template <class T>
T curve_derivative(const std::vector<T>& f, std::size_t j) {
    const T d1 = (f[j + 1] - f[j - 1]) / 2.0;
    const T d2 = (f[j + 2] - f[j - 2]) / 4.0;
    return (4.0 * d1 - d2) / 3.0;
}

// ---------------------------------------------------------------- ramanujan

void suite_ramanujan(Report& rep, const Config& cfg) {
    const int N = cfg.order;
    run_check(rep, "ramanujan/01-e2-relation", "Ramanujan system, E2 equation", 0.0, [&] {
        const QSeries e2 = eisenstein(2, N), e4 = eisenstein(4, N);
        return Outcome{series_max_abs(e2.derive_q().scaled(12) - (e2 * e2 - e4))};
    });
    run_check(rep, "ramanujan/02-e4-relation", "Ramanujan system, E4 equation", 0.0, [&] {
        const QSeries e2 = eisenstein(2, N), e4 = eisenstein(4, N), e6 = eisenstein(6, N);
        return Outcome{series_max_abs(e4.derive_q().scaled(3) - (e2 * e4 - e6))};
    });
    run_check(rep, "ramanujan/03-e6-relation", "Ramanujan system, E6 equation", 0.0, [&] {
        const QSeries e2 = eisenstein(2, N), e4 = eisenstein(4, N), e6 = eisenstein(6, N);
        return Outcome{series_max_abs(e6.derive_q().scaled(2) - (e2 * e6 - e4 * e4))};
    });
    run_check(rep, "ramanujan/04-integral-coefficients", "integrality of Eisenstein expansions",
              0.0, [&] {
                  double bad = 0.0;
                  for (int w : {2, 4, 6}) {
                      const QSeries s = eisenstein(w, N);
                      for (const auto& c : s.coeffs())
                          if (c.get_den() != 1) bad += 1.0;
                  }
                  return Outcome{bad};
              });

    // integrator fidelity against the q-expansion along tau: 2i -> 2i + 0.3
    auto endpoint_error = [&](double tol) {
        const Complex tau0(0.0, 2.0), tau1(0.3, 2.0);
        const QSeries e2 = eisenstein(2, N), e4 = eisenstein(4, N), e6 = eisenstein(6, N);
        dynamics::Vec y0{e2.eval(tau0).value, e4.eval(tau0).value, e6.eval(tau0).value};
        const Complex scale = -2.0 * kPi * kI;  // t = -2 pi i tau
        dynamics::IntegratorConfig ic;
        ic.atol = ic.rtol = tol;
        ic.max_steps = cfg.max_steps;
        const auto traj = dynamics::integrate(
            [](const dynamics::Vec& v) {
                return dynamics::to_vec(dynamics::ramanujan_rhs(dynamics::state3_from_vec(v)));
            },
            y0, {scale * tau0, scale * tau1}, ic);
        if (!traj.completed) throw std::runtime_error("integration failed: " + traj.failure);
        const dynamics::Vec ref{e2.eval(tau1).value, e4.eval(tau1).value, e6.eval(tau1).value};
        double err = 0.0;
        for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(traj.endpoint()[i] - ref[i]));
        return err;
    };
    run_check(rep, "ramanujan/05-flow-matches-series", "Ramanujan flow vs q-expansion", 1e-7,
              [&] { return Outcome{endpoint_error(1e-10)}; });
    run_check(rep, "ramanujan/06-tolerance-halving", "plumbing", 0.0, [&] {
        // tolerances chosen where the step controller actually binds
        const double base = endpoint_error(2e-8);
        const double half = endpoint_error(1e-8);
        Outcome out;
        out.residual = (half <= base) ? 0.0 : 1.0;
        out.note = "endpoint error " + fmt(base) + " -> " + fmt(half);
        return out;
    });
}

// -------------------------------------------------------------------- chazy

void suite_chazy(Report& rep, const Config& cfg) {
    run_check(rep, "chazy/01-modular-derivative-form", "Chazy equation for E2", 0.0, [&] {
        // gamma = (pi i/3) E2 turns gamma''' = 6 gamma gamma'' - 9 gamma'^2
        // into 2 D^3 E2 = 2 E2 D^2 E2 - 3 (D E2)^2 once the pi i powers clear.
        const QSeries e2 = eisenstein(2, cfg.order);
        const QSeries d1 = e2.derive_q(), d2 = d1.derive_q(), d3 = d2.derive_q();
        return Outcome{series_max_abs(d3.scaled(2) - (e2 * d2).scaled(2) + (d1 * d1).scaled(3))};
    });
    run_check(rep, "chazy/02-jet-residual", "Chazy equation, evaluated jet", 1e-8, [&] {
        const auto jet = frobenius::gamma_data(cfg.tau, cfg.order);
        return Outcome{std::abs(jet.d3 - 6.0 * jet.g * jet.d2 + 9.0 * jet.d1 * jet.d1)};
    });
}

// ------------------------------------------------------------------ riccati

void suite_riccati(Report& rep, const Config& cfg) {
    const std::array<std::pair<std::string, Complex>, 3> taus{
        std::pair{std::string("i"), Complex(0, 1)},
        std::pair{std::string("2i"), Complex(0, 2)},
        std::pair{std::string("half-plus-i"), Complex(0.5, 1)},
    };
    int idx = 0;
    for (const auto& [name, tau] : taus) {
        ++idx;
        run_check(rep, "riccati/0" + std::to_string(idx) + "-tau-" + name,
                  "Riccati flow of the half-period values e_k", 1e-6, [&, tau] {
                      const Complex v2 = eisenstein(2, cfg.order).eval(tau).value;
                      const Complex v4 = eisenstein(4, cfg.order).eval(tau).value;
                      double worst = 0.0;
                      for (int k = 0; k < 3; ++k) {
                          auto ek = [&, k](Complex t) {
                              const auto c = elliptic::elliptic_constants(t, 1e-13, cfg.order);
                              return k == 0 ? c.e1 : k == 1 ? c.e2 : c.e3;
                          };
                          const Complex d = fd_tau(ek, tau);
                          const Complex e = ek(tau);
                          const Complex rhs = kI / kPi *
                                              (-e * e + kPi * kPi / 3.0 * v2 * e +
                                               2.0 / 9.0 * std::pow(kPi, 4) * v4);
                          worst = std::max(worst, std::abs(d - rhs));
                      }
                      return Outcome{worst};
                  });
    }
}

// ------------------------------------------------------------------ halphen

std::array<Complex, 3> cubic_data_at(Complex tau, int order) {
    const auto jet = frobenius::gamma_data(tau, order);
    return {jet.g, jet.d1, jet.d2};
}

void suite_halphen(Report& rep, const Config& cfg) {
    run_check(rep, "halphen/01-root-curve-flow", "Darboux-Halphen system for the cubic roots",
              1e-6, [&] {
                  const int M = 40;
                  const double h = 2.5e-3;
                  std::vector<Complex> taus;
                  for (int j = 0; j <= M; ++j)
                      taus.push_back(cfg.tau + (j - M / 2) * h);
                  const auto curve = dynamics::root_curve(
                      taus, [&](Complex t) { return cubic_data_at(t, cfg.order); });
                  double worst = 0.0;
                  for (std::size_t j = 2; j + 2 < taus.size(); j += 4) {
                      const dynamics::State3 n{curve.branches[0][j], curve.branches[1][j],
                                               curve.branches[2][j]};
                      const auto rhs = dynamics::halphen_rhs(n);
                      const Complex d0 = curve_derivative(curve.branches[0], j) / h;
                      const Complex d1 = curve_derivative(curve.branches[1], j) / h;
                      const Complex d2 = curve_derivative(curve.branches[2], j) / h;
                      worst = std::max({worst, std::abs(d0 - rhs.x), std::abs(d1 - rhs.y),
                                        std::abs(d2 - rhs.z)});
                  }
                  return Outcome{worst};
              });
    run_check(rep, "halphen/02-pairwise-sum-form", "X_i = -2 N_i carries the flow to (X_i+X_j)' = X_i X_j",
              1e-12, [&] {
                  auto rng = seeded_rng(2);
                  double worst = 0.0;
                  for (int it = 0; it < 20; ++it) {
                      const dynamics::State3 n{random_complex(rng), random_complex(rng),
                                               random_complex(rng)};
                      const auto d = dynamics::halphen_rhs(n);
                      const Complex X1 = -2.0 * n.x, X2 = -2.0 * n.y, X3 = -2.0 * n.z;
                      const Complex dX1 = -2.0 * d.x, dX2 = -2.0 * d.y, dX3 = -2.0 * d.z;
                      worst = std::max({worst, std::abs(dX1 + dX2 - X1 * X2),
                                        std::abs(dX2 + dX3 - X2 * X3),
                                        std::abs(dX3 + dX1 - X3 * X1)});
                  }
                  return Outcome{worst};
              });
    run_check(rep, "halphen/03-vieta", "cubic root bookkeeping", 1e-10, [&] {
        const auto [g, g1, g2] = cubic_data_at(cfg.tau, cfg.order);
        const auto r = dynamics::cubic_roots(g, g1, g2);
        const Complex s1 = r[0] + r[1] + r[2];
        const Complex s2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        const Complex s3 = r[0] * r[1] * r[2];
        auto rel = [](Complex got, Complex want) {
            return std::abs(got - want) / std::max(1.0, std::abs(want));
        };
        return Outcome{std::max({rel(s1, -1.5 * g), rel(s2, 1.5 * g1), rel(s3, -0.25 * g2)})};
    });
    run_check(rep, "halphen/04-roots-vs-half-periods",
              "N_k = -(2i/pi)(pi^2 E2/12 + e_k/4), the closed form behind the root labels",
              1e-8, [&] {
                  const auto roots = frobenius::chazy_cubic_roots(cfg.tau, cfg.order);
                  const auto con = elliptic::elliptic_constants(cfg.tau, 1e-13, cfg.order);
                  const Complex v2 = eisenstein(2, cfg.order).eval(cfg.tau).value;
                  const Complex factor = -2.0 * kI / kPi;
                  std::array<Complex, 3> cand;
                  const std::array<Complex, 3> es{con.e1, con.e2, con.e3};
                  for (int k = 0; k < 3; ++k)
                      cand[k] = factor * (kPi * kPi / 12.0 * v2 + 0.25 * es[k]);
                  double worst = 0.0;
                  for (int k = 0; k < 3; ++k) {
                      double best = 1e300;
                      for (int j = 0; j < 3; ++j) best = std::min(best, std::abs(roots[k] - cand[j]));
                      worst = std::max(worst, best);
                  }
                  Outcome out{worst};
                  out.note = "proportionality constant -2i/pi between the cubic roots and "
                             "pi^2 E2/12 + e_k/4";
                  return out;
              });
}

// ---------------------------------------------------------------- frobenius

frobenius::FlatPoint random_flat_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_real_distribution<double> mod(0.5, 1.5);
    std::uniform_real_distribution<double> im(0.8, 3.0);
    const double arg = box(rng) * kPi;
    return {Complex(box(rng), box(rng)), mod(rng) * std::exp(kI * arg),
            Complex(0.5 * box(rng), im(rng))};
}

void suite_frobenius(Report& rep, const Config& cfg) {
    run_check(rep, "frobenius/01-canonical-coordinates", "canonical coordinates as spectrum of g",
              1e-10, [&] {
                  auto rng = seeded_rng(51);
                  double worst = 0.0;
                  for (int it = 0; it < 20; ++it) {
                      const auto p = random_flat_point(rng);
                      const auto c = frobenius::char_poly(p, cfg.order);
                      const auto u = frobenius::canonical_coords(p, cfg.order);
                      double scale = 0.0;
                      for (const auto& cc : c) scale = std::max(scale, std::abs(cc));
                      for (const auto& uk : u) {
                          const Complex val = ((uk + c[1]) * uk + c[2]) * uk + c[3];
                          worst = std::max(worst, std::abs(val) / scale);
                      }
                  }
                  return Outcome{worst};
              });
    run_check(rep, "frobenius/02-change-of-basis", "du-frame vs dt-frame transition", 1e-6, [&] {
        auto rng = seeded_rng(52);
        double worst = 0.0;
        for (int it = 0; it < 10; ++it) {
            const auto p = random_flat_point(rng);
            worst = std::max(worst, frobenius::change_of_basis(p, cfg.order).fd_deviation);
        }
        return Outcome{worst};
    });
    run_check(rep, "frobenius/03-change-of-basis-third-row",
              "third-row closed form of the transition matrix", 1e-6, [&] {
                  auto rng = seeded_rng(53);
                  const auto p = random_flat_point(rng);
                  const auto cb = frobenius::change_of_basis(p, cfg.order);
                  Outcome out;
                  out.residual = cb.fd_deviation;
                  out.flagged = true;
                  out.note = "printed row repeats the factor (N3-N2); corrected second term "
                             "uses (N3-N1). literal-row deviation " +
                             fmt(cb.fd_deviation_literal) + ", corrected " + fmt(cb.fd_deviation);
                  return out;
              });
    run_check(rep, "frobenius/04-euler-field", "E(F) = 2F quasihomogeneity", 1e-10, [&] {
        auto rng = seeded_rng(54);
        double worst = 0.0;
        for (int it = 0; it < 10; ++it) {
            const auto p = random_flat_point(rng);
            const auto jet = frobenius::gamma_data(p.t3, cfg.order);
            const Complex F = frobenius::potential_F(p, cfg.order);
            const Complex dF1 = p.t1 * p.t3 + 0.5 * p.t2 * p.t2;
            const Complex dF2 = p.t1 * p.t2 - p.t2 * p.t2 * p.t2 / 4.0 * jet.g;
            const Complex euler = p.t1 * dF1 + 0.5 * p.t2 * dF2;
            worst = std::max(worst, std::abs(euler - 2.0 * F) / std::max(1.0, std::abs(F)));
        }
        return Outcome{worst};
    });
    run_check(rep, "frobenius/05-quasihomogeneity", "F(c t1, sqrt(c) t2, t3) = c^2 F", 1e-10, [&] {
        auto rng = seeded_rng(55);
        const auto p = random_flat_point(rng);
        const double c = 4.0;
        const frobenius::FlatPoint q{c * p.t1, 2.0 * p.t2, p.t3};
        const Complex lhs = frobenius::potential_F(q, cfg.order);
        const Complex rhs = 16.0 * frobenius::potential_F(p, cfg.order);
        return Outcome{std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs))};
    });
    run_check(rep, "frobenius/06-associativity", "product associativity on the tangent algebra",
              1e-8, [&] {
                  const frobenius::FlatPoint p{Complex(0.3, -0.2), Complex(1.0, 0.0), cfg.tau};
                  return Outcome{frobenius::associativity_check(p, cfg.order)};
              });
    run_check(rep, "frobenius/07-wdvv", "WDVV reduction f_xxy^2 = f_yyy + f_xyy f_xxx", 1e-8, [&] {
        const frobenius::FlatPoint p{Complex(0.1, 0.4), Complex(0.9, 0.3), cfg.tau};
        return Outcome{std::abs(frobenius::wdvv_residual(p, cfg.order))};
    });
    run_check(rep, "frobenius/08-intersection-form", "intersection form as Euler contraction",
              1e-10, [&] {
                  auto rng = seeded_rng(58);
                  const auto p = random_flat_point(rng);
                  const auto cten = frobenius::structure_constants(p, cfg.order);
                  const auto g = frobenius::intersection_form(p, cfg.order);
                  const std::array<Complex, 3> E{p.t1, 0.5 * p.t2, Complex(0.0, 0.0)};
                  double worst = 0.0;
                  for (int i = 0; i < 3; ++i)
                      for (int j = 0; j < 3; ++j) {
                          Complex acc(0.0, 0.0);
                          // C_l^{ij} = eta^{im} C_{ml}^j with eta the antidiagonal
                          for (int l = 0; l < 3; ++l) acc += E[l] * cten[2 - i][l][j];
                          worst = std::max(worst, std::abs(acc - g[i][j]));
                      }
                  return Outcome{worst};
              });
    run_check(rep, "frobenius/09-char-poly", "det(g - u eta) expansion", 1e-9, [&] {
        auto rng = seeded_rng(59);
        double worst = 0.0;
        for (int it = 0; it < 5; ++it) {
            const auto p = random_flat_point(rng);
            const auto g = frobenius::intersection_form(p, cfg.order);
            const auto eta = frobenius::eta_inverse();
            auto det_at = [&](Complex u) {
                frobenius::Mat3 m = g;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) m[i][j] -= u * eta[i][j];
                return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            };
            const Complex p0 = det_at(0.0), p1 = det_at(1.0), pm1 = det_at(-1.0), p2 = det_at(2.0);
            const Complex c0 = p0;
            const Complex c2 = 0.5 * (p1 + pm1) - p0;
            const Complex odd = 0.5 * (p1 - pm1);
            const Complex c3 = ((p2 - 4.0 * c2 - c0) / 2.0 - odd) / 3.0;
            const Complex c1 = odd - c3;
            const auto want = frobenius::char_poly(p, cfg.order);
            double scale = 0.0;
            for (const auto& w : want) scale = std::max(scale, std::abs(w));
            worst = std::max({worst, std::abs(c3 - want[0]) / scale, std::abs(c2 - want[1]) / scale,
                              std::abs(c1 - want[2]) / scale, std::abs(c0 - want[3]) / scale});
        }
        return Outcome{worst};
    });

    // Euler-top companion system along a path through cfg.tau
    const int M = 40;
    const double h = 1e-3;
    std::vector<Complex> taus;
    for (int j = 0; j <= M; ++j) taus.push_back(cfg.tau + (j - M / 2) * h);

    run_check(rep, "frobenius/10-omega-first-equation", "Euler-top equation for Omega_1", 1e-6,
              [&] {
                  const auto states = frobenius::omega_curve(taus, cfg.order);
                  std::vector<Complex> o1, o2, o3, ss;
                  for (const auto& st : states) {
                      o1.push_back(st.omega1);
                      o2.push_back(st.omega2);
                      o3.push_back(st.omega3);
                      ss.push_back(st.s);
                  }
                  double corrected = 0.0, literal = 0.0;
                  for (std::size_t j = 2; j + 2 < taus.size(); j += 4) {
                      const Complex ds = curve_derivative(ss, j);
                      const Complex d1 = curve_derivative(o1, j) / ds;
                      corrected = std::max(corrected, std::abs(d1 - o2[j] * o3[j] / ss[j]));
                      literal = std::max(literal, std::abs(d1 - o2[j] * o2[j] / ss[j]));
                  }
                  Outcome out;
                  out.residual = corrected;
                  out.flagged = true;
                  out.note = "first line printed as Omega2*Omega2; the closed-form solution "
                             "satisfies the Omega2*Omega3 reading (residual " +
                             fmt(corrected) + ") and not the literal one (residual " +
                             fmt(literal) + ")";
                  return out;
              });
    run_check(rep, "frobenius/11-omega-remaining-equations", "Euler-top equations for Omega_2,3",
              1e-6, [&] {
                  const auto states = frobenius::omega_curve(taus, cfg.order);
                  std::vector<Complex> o1, o2, o3, ss;
                  for (const auto& st : states) {
                      o1.push_back(st.omega1);
                      o2.push_back(st.omega2);
                      o3.push_back(st.omega3);
                      ss.push_back(st.s);
                  }
                  double worst = 0.0;
                  for (std::size_t j = 2; j + 2 < taus.size(); j += 4) {
                      const Complex ds = curve_derivative(ss, j);
                      const Complex d2 = curve_derivative(o2, j) / ds;
                      const Complex d3 = curve_derivative(o3, j) / ds;
                      worst = std::max(worst, std::abs(d2 + o1[j] * o3[j] / (ss[j] - 1.0)));
                      worst = std::max(worst,
                                       std::abs(d3 - o1[j] * o2[j] / (ss[j] * (ss[j] - 1.0))));
                  }
                  return Outcome{worst};
              });
    run_check(rep, "frobenius/12-s-identity", "2 (dt3/ds) (N1-N3)(N2-N3)/(N2-N1) = 1", 1e-7, [&] {
        const auto states = frobenius::omega_curve(taus, cfg.order);
        std::vector<Complex> ss;
        for (const auto& st : states) ss.push_back(st.s);
        double worst = 0.0;
        for (std::size_t j = 2; j + 2 < taus.size(); j += 4) {
            const Complex dsdj = curve_derivative(ss, j);
            const Complex dt3ds = h / dsdj;
            const auto& n = states[j].roots;
            const Complex val =
                2.0 * dt3ds * (n[0] - n[2]) * (n[1] - n[2]) / (n[1] - n[0]);
            worst = std::max(worst, std::abs(val - 1.0));
        }
        return Outcome{worst};
    });
}

// -------------------------------------------------------------- hamiltonian

void suite_hamiltonian(Report& rep, const Config& cfg) {
    run_check(rep, "hamiltonian/01-field-gradient", "Hamiltonian field of F reproduces the lift",
              1e-7, [&] {
                  auto rng = seeded_rng(71);
                  double worst = 0.0;
                  for (int it = 0; it < 10; ++it) {
                      dynamics::State4 s{random_complex(rng), random_complex(rng),
                                         random_complex(rng),
                                         0.4 * random_complex(rng) + Complex(1.1, 0.0)};
                      const auto rhs = dynamics::lifted_rhs(s);
                      // phase coordinates (q1, q2, p1, p2) = (x1, z1, lambda y1, lambda)
                      dynamics::Vec phase{s.x1, s.z1, s.lambda * s.y1, s.lambda};
                      auto F = [](const dynamics::Vec& q) {
                          return dynamics::hamiltonian_F_phase(q[0], q[1], q[2], q[3]);
                      };
                      auto partial = [&](int i) {
                          auto f = [&](Complex v) {
                              dynamics::Vec q = phase;
                              q[i] = v;
                              return F(q);
                          };
                          return fd_tau(f, phase[i], 1e-5 * std::max(1.0, std::abs(phase[i])));
                      };
                      const Complex dq1 = partial(2);            // dF/dp1
                      const Complex dq2 = partial(3);            // dF/dp2
                      const Complex dp1 = -partial(0);           // -dF/dq1
                      const Complex dp2 = -partial(1);           // -dF/dq2
                      const Complex dy1 = (dp1 - dp2 * s.y1) / s.lambda;
                      worst = std::max({worst, std::abs(dq1 - rhs.x1), std::abs(dy1 - rhs.y1),
                                        std::abs(dq2 - rhs.z1), std::abs(dp2 - rhs.lambda)});
                  }
                  return Outcome{worst};
              });
    run_check(rep, "hamiltonian/02-contact-slice", "lambda = 1 slice equals the rescaled flow",
              1e-12, [&] {
                  auto rng = seeded_rng(72);
                  double worst = 0.0;
                  for (int it = 0; it < 20; ++it) {
                      const Complex x = random_complex(rng), y = random_complex(rng),
                                    z = random_complex(rng);
                      const auto lift = dynamics::lifted_rhs(dynamics::State4{x, y, z, 1.0});
                      const auto flat = dynamics::rescaled_rhs(dynamics::State3{x, y, z});
                      worst = std::max({worst, std::abs(lift.x1 - flat.x),
                                        std::abs(lift.y1 - flat.y), std::abs(lift.z1 - flat.z)});
                  }
                  return Outcome{worst};
              });
    run_check(rep, "hamiltonian/03-energy-conservation", "F constant along the lifted flow", 1e-6,
              [&] {
                  const dynamics::State4 s0{Complex(0.3, 0.1), Complex(0.2, -0.05),
                                            Complex(0.1, 0.02), Complex(1.0, 0.3)};
                  dynamics::IntegratorConfig ic;
                  ic.atol = ic.rtol = 1e-11;
                  ic.max_steps = cfg.max_steps;
                  const auto traj = dynamics::integrate(
                      [](const dynamics::Vec& v) {
                          return dynamics::to_vec(dynamics::lifted_rhs(dynamics::state4_from_vec(v)));
                      },
                      dynamics::to_vec(s0), {Complex(0, 0), Complex(0.5, 0.2)}, ic);
                  if (!traj.completed) throw std::runtime_error("integration failed: " + traj.failure);
                  const Complex f0 = dynamics::hamiltonian_F(s0);
                  const Complex f1 =
                      dynamics::hamiltonian_F(dynamics::state4_from_vec(traj.endpoint()));
                  return Outcome{std::abs(f1 - f0)};
              });
    run_check(rep, "hamiltonian/04-canonical-pair", "Poisson bracket {x1, y1} = 1", 1e-9, [&] {
        const dynamics::Vec xs{Complex(0.3, 0.4), Complex(-0.2, 0.1)};
        const dynamics::Vec ys{Complex(0.7, -0.3), Complex(0.5, 0.6)};
        auto coord_x = [](const dynamics::Vec& x, const dynamics::Vec&) { return x[0]; };
        auto coord_y = [](const dynamics::Vec&, const dynamics::Vec& y) { return y[0]; };
        return Outcome{std::abs(dynamics::poisson_bracket(coord_x, coord_y, xs, ys) - 1.0)};
    });
    run_check(rep, "hamiltonian/05-doubled-halphen", "doubled-space Hamiltonian recovers the flow",
              1e-8, [&] {
                  auto field = [](const dynamics::Vec& x) {
                      return dynamics::to_vec(dynamics::halphen_rhs(dynamics::state3_from_vec(x)));
                  };
                  const auto H = dynamics::hamiltonian_lift(field);
                  auto rng = seeded_rng(75);
                  double worst = 0.0;
                  for (int it = 0; it < 5; ++it) {
                      dynamics::Vec xs{random_complex(rng), random_complex(rng), random_complex(rng)};
                      dynamics::Vec ys{random_complex(rng), random_complex(rng), random_complex(rng)};
                      const auto fx = field(xs);
                      for (int i = 0; i < 3; ++i) {
                          auto f = [&](Complex v) {
                              dynamics::Vec y2 = ys;
                              y2[static_cast<std::size_t>(i)] = v;
                              return H(xs, y2);
                          };
                          const Complex xdot = -fd_tau(f, ys[static_cast<std::size_t>(i)], 1e-5);
                          worst = std::max(worst, std::abs(xdot - fx[static_cast<std::size_t>(i)]));
                      }
                  }
                  return Outcome{worst};
              });
}

// -------------------------------------------------------------- connections

void suite_connections(Report& rep, const Config& cfg) {
    const std::vector<Complex> tau_set{Complex(0, 1), Complex(0, 2), Complex(0.5, 1),
                                       Complex(1.0 / 3.0, 1.2)};
    run_check(rep, "connections/01-curvature-series", "curvature of (pi i/3) E2 is (pi^2/18) E4",
              0.0, [&] {
                  const auto rep2 = connections::affine_curvature(cfg.tau, cfg.order);
                  return Outcome{rep2.exact ? 0.0 : 1.0};
              });
    run_check(rep, "connections/02-curvature-value", "curvature value at the base point", 1e-9,
              [&] {
                  const auto rep2 = connections::affine_curvature(cfg.tau, cfg.order);
                  const Complex want =
                      kPi * kPi / 18.0 * eisenstein(4, cfg.order).eval(cfg.tau).value;
                  return Outcome{std::abs(rep2.value - want)};
              });
    run_check(rep, "connections/03-serre-e4", "Serre derivative of E4", 0.0, [&] {
        const QSeries got = connections::serre_derivative(2, eisenstein(4, cfg.order));
        const QSeries want = eisenstein(6, cfg.order).scaled(frac(-1, 3));
        return Outcome{series_max_abs(got - want)};
    });
    run_check(rep, "connections/04-serre-e6", "Serre derivative of E6", 0.0, [&] {
        const QSeries e4 = eisenstein(4, cfg.order);
        const QSeries got = connections::serre_derivative(3, eisenstein(6, cfg.order));
        const QSeries want = (e4 * e4).scaled(frac(-1, 2));
        return Outcome{series_max_abs(got - want)};
    });
    run_check(rep, "connections/05-wirtinger", "Wirtinger connections are -6 e_k", 1e-8, [&] {
        double corrected = 0.0, statement = 0.0;
        for (const auto& tau : tau_set) {
            const auto con = elliptic::elliptic_constants(tau, 1e-13, cfg.order);
            const std::array<Complex, 3> es{con.e1, con.e2, con.e3};
            double scale = 0.0;
            for (const auto& e : es) scale = std::max(scale, 6.0 * std::abs(e));
            for (int k = 1; k <= 3; ++k) {
                const Complex wd = connections::wirtinger_connection(
                    connections::char_for_e_derived(k), tau, 1e-14, cfg.order);
                const Complex ws = connections::wirtinger_connection(
                    connections::char_for_e_statement(k), tau, 1e-14, cfg.order);
                corrected = std::max(corrected, std::abs(wd + 6.0 * es[k - 1]) / scale);
                statement = std::max(statement, std::abs(ws + 6.0 * es[k - 1]) / scale);
            }
        }
        Outcome out;
        out.residual = corrected;
        out.flagged = true;
        out.note = "characteristic order (1,0)->e1, (0,1)->e2, (0,0)->e3 from the half-period "
                   "translation formulas holds (residual " + fmt(corrected) +
                   "); the 'respectively' order (0,0),(1,0),(0,1) deviates by " + fmt(statement);
        return out;
    });
    run_check(rep, "connections/06-klein-invariant", "invariant Wirtinger connection vanishes",
              1e-7, [&] {
                  double worst = 0.0;
                  for (const auto& tau : tau_set)
                      worst = std::max(
                          worst, std::abs(connections::klein_invariant_connection(tau, 1e-14,
                                                                                  cfg.order)));
                  return Outcome{worst};
              });
    run_check(rep, "connections/07-averaging-identity",
              "(1/3) theta'''(0)/theta'(0) = -pi^2 E2/3", 1e-8, [&] {
                  double worst = 0.0;
                  for (const auto& tau : tau_set) {
                      const auto jet =
                          elliptic::theta_char_jet({1, 1}, Complex(0, 0), tau, 1e-14);
                      const Complex lhs = jet[3] / jet[1] / 3.0;
                      const Complex rhs =
                          -kPi * kPi / 3.0 * eisenstein(2, cfg.order).eval(tau).value;
                      worst = std::max(worst, std::abs(lhs - rhs));
                  }
                  return Outcome{worst};
              });
    run_check(rep, "connections/08-e2-functional-equation", "modular anomaly of E2", 1e-8, [&] {
        const double s = std::abs(connections::e2_affine_check({0, -1, 1, 0}, cfg.tau, cfg.order));
        const double t = std::abs(connections::e2_affine_check({1, 1, 0, 1}, cfg.tau, cfg.order));
        return Outcome{std::max(s, t)};
    });
    run_check(rep, "connections/09-a-period", "vanishing a-period of the Bergman kernel", 1e-6,
              [&] {
                  return Outcome{std::abs(
                      connections::bergman_a_period(Complex(0.3, 0.2), cfg.tau, 1e-12, cfg.order))};
              });
    run_check(rep, "connections/10-biresidue", "biresidue 1 of the Bergman kernel", 1e-4, [&] {
        const Complex u(0.31, 0.17), v = u + Complex(1e-3, 0.0);
        const auto k = connections::bergman_kernel(u, v, cfg.tau, 1e-13, cfg.order);
        return Outcome{std::abs((u - v) * (u - v) * k.value - 1.0)};
    });
    run_check(rep, "connections/11-serre-weight", "Serre derivative lands in weight 2k+2", 1e-6,
              [&] {
                  const QSeries g = connections::serre_derivative(2, eisenstein(4, cfg.order));
                  const Complex tau = cfg.tau;
                  const Complex lhs = g.eval(-1.0 / tau).value;
                  const Complex rhs = std::pow(tau, 6) * g.eval(tau).value;
                  return Outcome{std::abs(lhs - rhs) / std::abs(rhs)};
              });
    run_check(rep, "connections/12-half-period-translation",
              "wp(u + omega_k) from the Jacobi theta logarithms", 1e-7, [&] {
                  const Complex tau = cfg.tau;
                  const Complex u(0.23, 0.31);
                  const Complex eta_term =
                      kPi * kPi / 3.0 * eisenstein(2, cfg.order).eval(tau).value;
                  const std::array<Complex, 3> omegas{Complex(0.5, 0), 0.5 * tau,
                                                      0.5 * (1.0 + tau)};
                  double worst = 0.0;
                  for (int i = 1; i <= 3; ++i) {
                      auto f = [&](Complex w) { return elliptic::jacobi_theta(i, w, tau); };
                      const double h = 1e-3;
                      auto d1 = [&](double step) {
                          return (f(u + step) - f(u - step)) / (2.0 * step);
                      };
                      auto d2 = [&](double step) {
                          return (f(u + step) - 2.0 * f(u) + f(u - step)) / (step * step);
                      };
                      const Complex fd1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
                      const Complex fd2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
                      const Complex logdd = fd2 / f(u) - fd1 * fd1 / (f(u) * f(u));
                      const Complex lhs = elliptic::wp(u + omegas[i - 1], tau, 1e-13);
                      worst = std::max(worst, std::abs(lhs + eta_term + logdd));
                  }
                  return Outcome{worst};
              });
}

}  // namespace

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status != "fail"; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"ramanujan", "chazy",       "riccati",
                                                "halphen",   "frobenius",   "hamiltonian",
                                                "connections", "all"};
    return names;
}

Report run_suite(const std::string& suite, const Config& cfg) {
    Report rep;
    rep.suite = suite;
    rep.config = cfg;
    if (suite == "ramanujan" || suite == "all") suite_ramanujan(rep, cfg);
    else if (suite == "chazy") suite_chazy(rep, cfg);
    else if (suite == "riccati") suite_riccati(rep, cfg);
    else if (suite == "halphen") suite_halphen(rep, cfg);
    else if (suite == "frobenius") suite_frobenius(rep, cfg);
    else if (suite == "hamiltonian") suite_hamiltonian(rep, cfg);
    else if (suite == "connections") suite_connections(rep, cfg);
    else if (suite != "all") throw std::invalid_argument("unknown suite: " + suite);
    if (suite == "all") {
        suite_chazy(rep, cfg);
        suite_riccati(rep, cfg);
        suite_halphen(rep, cfg);
        suite_frobenius(rep, cfg);
        suite_hamiltonian(rep, cfg);
        suite_connections(rep, cfg);
    }
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const Check& a, const Check& b) { return a.id < b.id; });
    return rep;
}

jsonio::Json to_json(const Report& report, bool with_timings) {
    jsonio::Json j;
    j["schema"] = "halphen-lab/1";
    j["suite"] = report.suite;
    j["version"] = "0.1.0";
    jsonio::Json cfg;
    cfg["order"] = report.config.order;
    cfg["tol"] = report.config.tol;
    cfg["tau"] = jsonio::complex_json(report.config.tau);
    cfg["max_steps"] = static_cast<std::int64_t>(report.config.max_steps);
    j["config"] = cfg;
    jsonio::Json checks = jsonio::Json::array();
    for (const auto& c : report.checks) {
        jsonio::Json e;
        e["id"] = c.id;
        e["ref"] = c.ref;
        e["status"] = c.status;
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        if (with_timings) e["runtime_ms"] = c.runtime_ms;
        if (!c.note.empty()) e["note"] = c.note;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j;
}

}  // namespace halphen::verify

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "halphen/dynamics.hpp"
#include "halphen/frobenius.hpp"
#include "halphen/qseries.hpp"
#include "halphen/rational.hpp"

using namespace halphen;
using namespace halphen::dynamics;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

GaussianRational grand(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    return {frac(num(rng), den(rng)), frac(num(rng), den(rng))};
}

Complex crand(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng)};
}

Vec ramanujan_vec(const Vec& v) { return to_vec(ramanujan_rhs(state3_from_vec(v))); }

}  // namespace

TEST_CASE("ramanujan fixed points and series oracle") {
    const auto zero = ramanujan_rhs(State3{Complex(1, 0), Complex(1, 0), Complex(1, 0)});
    CHECK(std::abs(zero.x) == 0.0);
    CHECK(std::abs(zero.y) == 0.0);
    CHECK(std::abs(zero.z) == 0.0);
    const auto origin = ramanujan_rhs(State3{});
    CHECK(std::abs(origin.x) + std::abs(origin.y) + std::abs(origin.z) == 0.0);

    // at (E2,E4,E6)(2i) the right-hand side is the t-derivative, t = -2 pi i tau,
    // i.e. -D applied to each series
    const Complex tau(0.0, 2.0);
    const QSeries e2 = eisenstein(2, 64), e4 = eisenstein(4, 64), e6 = eisenstein(6, 64);
    const State3 s{e2.eval(tau).value, e4.eval(tau).value, e6.eval(tau).value};
    const auto rhs = ramanujan_rhs(s);
    CHECK(std::abs(rhs.x + e2.derive_q().eval(tau).value) < 1e-8);
    CHECK(std::abs(rhs.y + e4.derive_q().eval(tau).value) < 1e-8);
    CHECK(std::abs(rhs.z + e6.derive_q().eval(tau).value) < 1e-8);
}

TEST_CASE("rescaled flow is the (1/6, 1/3, 1/27) change of variables") {
    // exact in the Gaussian rationals: rescaling the state and reversing time
    // carries one right-hand side to the other
    std::mt19937 rng(101u);
    const GaussianRational six(6), three(3), twentyseven(27);
    for (int it = 0; it < 25; ++it) {
        const State3T<GaussianRational> s{grand(rng), grand(rng), grand(rng)};
        const State3T<GaussianRational> mapped{s.x / six, s.y / three, s.z / twentyseven};
        const auto lhs = rescaled_rhs(mapped);
        const auto ram = ramanujan_rhs(s);
        CHECK(lhs.x == -(ram.x / six));
        CHECK(lhs.y == -(ram.y / three));
        CHECK(lhs.z == -(ram.z / twentyseven));
    }

    const auto fp = rescaled_rhs(State3{Complex(1, 0), Complex(12, 0), Complex(8, 0)});
    CHECK(std::abs(fp.x) + std::abs(fp.y) + std::abs(fp.z) == 0.0);
    const auto origin = rescaled_rhs(State3{});
    CHECK(std::abs(origin.x) + std::abs(origin.y) + std::abs(origin.z) == 0.0);
}

TEST_CASE("halphen flow on the symmetric locus and pairwise-sum form") {
    const Complex c(0.7, -0.3);
    const auto sym = halphen_rhs(State3{c, c, c});
    CHECK(std::abs(sym.x + c * c) < 1e-15);
    CHECK(std::abs(sym.y + c * c) < 1e-15);
    CHECK(std::abs(sym.z + c * c) < 1e-15);

    // X_i = -2 N_i turns the flow into (X_i + X_j)' = X_i X_j, exactly
    std::mt19937 rng(102u);
    const GaussianRational minus_two(-2);
    for (int it = 0; it < 25; ++it) {
        const State3T<GaussianRational> n{grand(rng), grand(rng), grand(rng)};
        const auto d = halphen_rhs(n);
        const GaussianRational X1 = minus_two * n.x, X2 = minus_two * n.y, X3 = minus_two * n.z;
        const GaussianRational dX1 = minus_two * d.x, dX2 = minus_two * d.y, dX3 = minus_two * d.z;
        CHECK(dX1 + dX2 == X1 * X2);
        CHECK(dX2 + dX3 == X2 * X3);
        CHECK(dX3 + dX1 == X3 * X1);
    }
}

TEST_CASE("chazy reduction") {
    const auto origin = chazy_rhs(ChazyState{});
    CHECK(std::abs(origin.g) + std::abs(origin.g1) + std::abs(origin.g2) == 0.0);

    const auto jet = frobenius::gamma_data(Complex(0, 2), 64);
    const auto rhs = chazy_rhs(ChazyState{jet.g, jet.d1, jet.d2});
    CHECK(std::abs(rhs.g - jet.d1) == 0.0);
    CHECK(std::abs(rhs.g1 - jet.d2) == 0.0);
    CHECK(std::abs(rhs.g2 - jet.d3) < 1e-7);
}

TEST_CASE("hamiltonian value") {
    using GR = GaussianRational;
    const State4T<GR> zero{GR(0), GR(0), GR(0), GR(5)};
    CHECK(hamiltonian_F(zero) == GR(0));
    const State4T<GR> a{GR(1), GR(1), GR(0), GR(1)};
    CHECK(hamiltonian_F(a) == GR(frac(23, 48)));
    const State4T<GR> b{GR(1), GR(1), GR(1), GR(1)};
    CHECK(hamiltonian_F(b) == GR(frac(167, 48)));
}

TEST_CASE("lifted flow") {
    CHECK_THROWS_AS(lifted_rhs(State4{Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)}),
                    std::invalid_argument);

    std::mt19937 rng(103u);
    for (int it = 0; it < 20; ++it) {
        const Complex x = crand(rng), y = crand(rng), z = crand(rng);
        // lambda = 1 slice is the rescaled flow, exactly
        const auto lift = lifted_rhs(State4{x, y, z, Complex(1, 0)});
        const auto flat = rescaled_rhs(State3{x, y, z});
        CHECK(std::abs(lift.x1 - flat.x) == 0.0);
        CHECK(std::abs(lift.y1 - flat.y) == 0.0);
        CHECK(std::abs(lift.z1 - flat.z) == 0.0);

        // x1 = 0 specialization
        const Complex lam = crand(rng) + Complex(2.0, 0.0);
        const auto v = lifted_rhs(State4{Complex(0, 0), y, z, lam});
        Complex l9 = lam * lam;
        l9 *= l9;
        l9 = l9 * l9 * lam;
        CHECK(std::abs(v.x1 + l9 * y / 24.0) < 1e-14);
        CHECK(std::abs(v.y1 + 3.0 * z) < 1e-14);
        CHECK(std::abs(v.z1 + l9 * y * y / 6.0) < 1e-13);
        CHECK(std::abs(v.lambda) == 0.0);
    }
}

TEST_CASE("hamilton equations reproduce the lift by finite differences") {
    std::mt19937 rng(104u);
    for (int it = 0; it < 8; ++it) {
        const State4 s{crand(rng), crand(rng), crand(rng), 0.4 * crand(rng) + Complex(1.1, 0.0)};
        const auto rhs = lifted_rhs(s);
        const Vec phase{s.x1, s.z1, s.lambda * s.y1, s.lambda};
        auto F = [](const Vec& q) { return hamiltonian_F_phase(q[0], q[1], q[2], q[3]); };
        auto partial = [&](std::size_t i) {
            const double h = 1e-5 * std::max(1.0, std::abs(phase[i]));
            auto diff = [&](double step) {
                Vec qp = phase, qm = phase;
                qp[i] += step;
                qm[i] -= step;
                return (F(qp) - F(qm)) / (2.0 * step);
            };
            return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
        };
        // Omega = dp ^ dq: qdot = dF/dp, pdot = -dF/dq
        const Complex dx1 = partial(2);
        const Complex dz1 = partial(3);
        const Complex dp1 = -partial(0);
        const Complex dlam = -partial(1);
        const Complex dy1 = (dp1 - dlam * s.y1) / s.lambda;
        CHECK(std::abs(dx1 - rhs.x1) < 1e-7);
        CHECK(std::abs(dy1 - rhs.y1) < 1e-7);
        CHECK(std::abs(dz1 - rhs.z1) < 1e-7);
        CHECK(std::abs(dlam - rhs.lambda) < 1e-7);
    }
}

TEST_CASE("integrator on the zero field") {
    auto zero_rhs = [](const Vec& v) { return Vec(v.size(), Complex(0, 0)); };
    IntegratorConfig cfg;
    const auto traj = integrate(zero_rhs, {Complex(1, 2), Complex(-3, 4)},
                                {Complex(0, 0), Complex(1, 1)}, cfg);
    CHECK(traj.completed);
    CHECK(traj.rejected == 0);
    CHECK(std::abs(traj.endpoint()[0] - Complex(1, 2)) == 0.0);
    CHECK(std::abs(traj.endpoint()[1] - Complex(-3, 4)) == 0.0);
}

TEST_CASE("integrator matches the q-expansion along a tau path") {
    const Complex tau0(0.0, 2.0), tau1(0.3, 2.0);
    const QSeries e2 = eisenstein(2, 64), e4 = eisenstein(4, 64), e6 = eisenstein(6, 64);
    const Vec y0{e2.eval(tau0).value, e4.eval(tau0).value, e6.eval(tau0).value};
    const Complex scale = -2.0 * kPi * kI;

    auto run = [&](double tol) {
        IntegratorConfig cfg;
        cfg.atol = cfg.rtol = tol;
        return integrate(ramanujan_vec, y0, {scale * tau0, scale * tau1}, cfg);
    };
    const auto traj = run(1e-10);
    REQUIRE(traj.completed);
    const Vec ref{e2.eval(tau1).value, e4.eval(tau1).value, e6.eval(tau1).value};
    double err = 0.0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(traj.endpoint()[i] - ref[i]));
    CHECK(err < 1e-7);

    // halving the tolerance tightens the endpoint
    auto endpoint_err = [&](double tol) {
        const auto t = run(tol);
        double e = 0.0;
        for (int i = 0; i < 3; ++i) e = std::max(e, std::abs(t.endpoint()[i] - ref[i]));
        return e;
    };
    CHECK(endpoint_err(1e-8) <= endpoint_err(2e-8));
}

TEST_CASE("integrator round trip returns to the start") {
    const Complex t0(0.2, 0.1), t1(1.1, -0.4);
    IntegratorConfig cfg;
    cfg.atol = cfg.rtol = 1e-11;
    const Vec y0{Complex(0.4, 0.1), Complex(0.3, -0.2), Complex(0.2, 0.05)};
    auto rhs = [](const Vec& v) { return to_vec(rescaled_rhs(state3_from_vec(v))); };
    const auto fwd = integrate(rhs, y0, {t0, t1}, cfg);
    REQUIRE(fwd.completed);
    const auto back = integrate(rhs, fwd.endpoint(), {t1, t0}, cfg);
    REQUIRE(back.completed);
    for (int i = 0; i < 3; ++i) {
        const double scale = 10.0 * (cfg.atol + cfg.rtol * std::abs(y0[i]));
        CHECK(std::abs(back.endpoint()[i] - y0[i]) < scale);
    }
}

TEST_CASE("integrator diagnostics") {
    auto rhs = [](const Vec& v) { return to_vec(halphen_rhs(state3_from_vec(v))); };
    IntegratorConfig cfg;
    SUBCASE("blow-up guard") {
        // on the symmetric locus c' = -c^2, so a negative start runs into the
        // movable pole at t = -1/c0
        const auto traj = integrate(rhs, {Complex(-1e6, 0), Complex(-1e6, 0), Complex(-1e6, 0)},
                                    {Complex(0, 0), Complex(10, 0)}, cfg);
        CHECK_FALSE(traj.completed);
        CHECK(traj.failure.find("1e12") != std::string::npos);
        CHECK(traj.samples.size() > 1);  // last good sample retained
    }
    SUBCASE("step exhaustion") {
        cfg.max_steps = 3;
        const auto traj = integrate(rhs, {Complex(0.1, 0), Complex(0.2, 0), Complex(0.3, 0)},
                                    {Complex(0, 0), Complex(50, 0)}, cfg);
        CHECK_FALSE(traj.completed);
        CHECK(traj.failure.find("step") != std::string::npos);
    }
    SUBCASE("waypoint validation") {
        CHECK_THROWS_AS(integrate(rhs, {Complex(0, 0)}, {Complex(0, 0)}, cfg),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            integrate(rhs, {Complex(0, 0)}, {Complex(1, 0), Complex(1, 0)}, cfg),
            std::invalid_argument);
    }
}

TEST_CASE("cubic roots") {
    SUBCASE("unit cube roots") {
        // N^3 - 1 = 0 through (gamma, gamma', gamma'') = (0, 0, -4)
        const auto roots = cubic_roots(Complex(0, 0), Complex(0, 0), Complex(-4, 0));
        for (const auto& r : roots) CHECK(std::abs(r * r * r - 1.0) < 1e-12);
    }
    SUBCASE("vieta at modular data") {
        const auto jet = frobenius::gamma_data(Complex(0, 2), 64);
        const auto r = cubic_roots(jet.g, jet.d1, jet.d2);
        CHECK(std::abs(r[0] + r[1] + r[2] + 1.5 * jet.g) < 1e-12);
        CHECK(std::abs(r[0] * r[1] + r[0] * r[2] + r[1] * r[2] - 1.5 * jet.d1) < 1e-12);
        CHECK(std::abs(r[0] * r[1] * r[2] + 0.25 * jet.d2) < 1e-12);
        for (const auto& x : r) {
            const Complex back = x * x * x + 1.5 * jet.g * x * x + 1.5 * jet.d1 * x + 0.25 * jet.d2;
            CHECK(std::abs(back) < 1e-10);
        }
    }
    SUBCASE("repeated roots rejected") {
        // x^3 - 3x + 2 = (x-1)^2 (x+2)
        CHECK_THROWS_AS(cubic_roots(Complex(0, 0), Complex(-2, 0), Complex(8, 0)),
                        std::invalid_argument);
    }
    SUBCASE("deterministic labels") {
        const auto s = sort_roots({Complex(1, 0), Complex(2, 5), Complex(2, -1)});
        CHECK(s[0] == Complex(2, 5));
        CHECK(s[1] == Complex(2, -1));
        CHECK(s[2] == Complex(1, 0));
    }
}

TEST_CASE("root curves") {
    auto data = [](Complex tau) {
        const auto jet = frobenius::gamma_data(tau, 48);
        return std::array<Complex, 3>{jet.g, jet.d1, jet.d2};
    };

    SUBCASE("constant path keeps labels") {
        const std::vector<Complex> taus(5, Complex(0.0, 2.0));
        // identical samples: pairing is the identity, labels stay put
        const auto jet0 = data(Complex(0.0, 2.0));
        const auto start = sort_roots(cubic_roots(jet0[0], jet0[1], jet0[2]));
        const auto curve = root_curve_from(taus, data, start);
        for (int b = 0; b < 3; ++b)
            for (const auto& v : curve.branches[b]) CHECK(std::abs(v - start[b]) < 1e-12);
    }

    SUBCASE("branches satisfy the symmetric quadratic flow") {
        std::vector<Complex> taus;
        const double h = 2e-3;
        for (int j = 0; j <= 30; ++j) taus.push_back(Complex(-0.03, 2.0) + j * h);
        const auto curve = root_curve(taus, data);
        for (std::size_t j = 2; j + 2 < taus.size(); j += 3) {
            const State3 n{curve.branches[0][j], curve.branches[1][j], curve.branches[2][j]};
            const auto rhs = halphen_rhs(n);
            auto deriv = [&](const std::vector<Complex>& f) {
                const Complex d1 = (f[j + 1] - f[j - 1]) / (2.0 * h);
                const Complex d2 = (f[j + 2] - f[j - 2]) / (4.0 * h);
                return (4.0 * d1 - d2) / 3.0;
            };
            CHECK(std::abs(deriv(curve.branches[0]) - rhs.x) < 1e-6);
            CHECK(std::abs(deriv(curve.branches[1]) - rhs.y) < 1e-6);
            CHECK(std::abs(deriv(curve.branches[2]) - rhs.z) < 1e-6);
        }
    }

    SUBCASE("permuted initial labels permute the branches") {
        std::vector<Complex> taus;
        for (int j = 0; j <= 10; ++j) taus.push_back(Complex(0.0, 2.0) + j * 5e-3);
        const auto jet0 = data(taus.front());
        const auto start = sort_roots(cubic_roots(jet0[0], jet0[1], jet0[2]));
        const auto base = root_curve_from(taus, data, start);
        const auto permuted = root_curve_from(taus, data, {start[2], start[0], start[1]});
        for (std::size_t j = 0; j < taus.size(); ++j) {
            CHECK(std::abs(permuted.branches[0][j] - base.branches[2][j]) < 1e-12);
            CHECK(std::abs(permuted.branches[1][j] - base.branches[0][j]) < 1e-12);
            CHECK(std::abs(permuted.branches[2][j] - base.branches[1][j]) < 1e-12);
        }
    }

    SUBCASE("ambiguous pairing is reported") {
        // roots (1,-1,0) then (i,-i,0): identity and swap cost the same
        int call = 0;
        auto flip = [&call](Complex) -> std::array<Complex, 3> {
            return (call++ == 0) ? std::array<Complex, 3>{Complex(0, 0), frac(-2, 3).get_d(), 0}
                                 : std::array<Complex, 3>{Complex(0, 0), frac(2, 3).get_d(), 0};
        };
        const std::vector<Complex> taus{Complex(0, 1), Complex(0, 1.001)};
        CHECK_THROWS_AS(root_curve(taus, flip), std::runtime_error);
    }
}

TEST_CASE("substitution to the rescaled variables") {
    const Complex c(0.4, -0.7);
    const auto sym = substitution_S5(State3{c, c, c});
    CHECK(std::abs(sym.x - c) < 1e-15);
    CHECK(std::abs(sym.y) < 1e-14);
    CHECK(std::abs(sym.z) < 1e-14);

    SUBCASE("cyclic invariance, exactly") {
        std::mt19937 rng(105u);
        for (int it = 0; it < 10; ++it) {
            const State3T<GaussianRational> s{grand(rng), grand(rng), grand(rng)};
            const auto a = substitution_S5(s);
            const auto b = substitution_S5(State3T<GaussianRational>{s.y, s.z, s.x});
            CHECK(a.x == b.x);
            CHECK(a.y == b.y);
            CHECK(a.z == b.z);
        }
    }

    SUBCASE("chain rule onto the rescaled flow, exactly") {
        // with (X_i + X_j)' = X_i X_j, i.e. X_i' = (X_i X_j + X_i X_k - X_j X_k)/2,
        // the substituted variables satisfy the rescaled system
        std::mt19937 rng(106u);
        const GaussianRational two(2), three(3), four(4), twentyseven(27);
        for (int it = 0; it < 15; ++it) {
            const GaussianRational X1 = grand(rng), X2 = grand(rng), X3 = grand(rng);
            const GaussianRational d1 = (X1 * X2 + X1 * X3 - X2 * X3) / two;
            const GaussianRational d2 = (X2 * X1 + X2 * X3 - X1 * X3) / two;
            const GaussianRational d3 = (X3 * X1 + X3 * X2 - X1 * X2) / two;
            const State3T<GaussianRational> s{X1, X2, X3};
            const auto xyz = substitution_S5(s);
            const auto want = rescaled_rhs(xyz);

            const GaussianRational dx = (d1 + d2 + d3) / three;
            const GaussianRational dy =
                four / three *
                (two * (X1 * d1 + X2 * d2 + X3 * d3) -
                 (d1 * X2 + X1 * d2 + d2 * X3 + X2 * d3 + d3 * X1 + X3 * d1));
            const GaussianRational f1 = two * X1 - X2 - X3;
            const GaussianRational f2 = two * X2 - X3 - X1;
            const GaussianRational f3 = two * X3 - X1 - X2;
            const GaussianRational g1 = two * d1 - d2 - d3;
            const GaussianRational g2 = two * d2 - d3 - d1;
            const GaussianRational g3 = two * d3 - d1 - d2;
            const GaussianRational dz = four / twentyseven * (g1 * f2 * f3 + f1 * g2 * f3 + f1 * f2 * g3);
            CHECK(dx == want.x);
            CHECK(dy == want.y);
            CHECK(dz == want.z);
        }
    }

    SUBCASE("chain rule along an integrated trajectory") {
        auto data = [](Complex tau) {
            const auto jet = frobenius::gamma_data(tau, 48);
            return std::array<Complex, 3>{jet.g, jet.d1, jet.d2};
        };
        std::vector<Complex> taus;
        const double h = 2e-3;
        for (int j = 0; j <= 20; ++j) taus.push_back(Complex(0.0, 2.0) + j * h);
        const auto curve = root_curve(taus, data);
        std::vector<State3> xyz;
        for (std::size_t j = 0; j < taus.size(); ++j)
            xyz.push_back(substitution_S5(State3{-2.0 * curve.branches[0][j],
                                                 -2.0 * curve.branches[1][j],
                                                 -2.0 * curve.branches[2][j]}));
        for (std::size_t j = 2; j + 2 < taus.size(); j += 3) {
            const auto want = rescaled_rhs(xyz[j]);
            auto deriv = [&](auto pick) {
                const Complex d1 = (pick(xyz[j + 1]) - pick(xyz[j - 1])) / (2.0 * h);
                const Complex d2 = (pick(xyz[j + 2]) - pick(xyz[j - 2])) / (4.0 * h);
                return (4.0 * d1 - d2) / 3.0;
            };
            CHECK(std::abs(deriv([](const State3& s) { return s.x; }) - want.x) < 1e-6);
            CHECK(std::abs(deriv([](const State3& s) { return s.y; }) - want.y) < 1e-6);
            CHECK(std::abs(deriv([](const State3& s) { return s.z; }) - want.z) < 1e-6);
        }
    }
}

TEST_CASE("poisson bracket") {
    const Vec xs{Complex(0.3, 0.2), Complex(-0.4, 0.6)};
    const Vec ys{Complex(0.1, -0.5), Complex(0.8, 0.3)};
    auto f = [](const Vec& x, const Vec& y) { return x[0] * x[0] * y[0] + x[1] * y[1] * y[1]; };
    CHECK(std::abs(poisson_bracket(f, f, xs, ys)) < 1e-9);

    auto cx = [](const Vec& x, const Vec&) { return x[0]; };
    auto cy = [](const Vec&, const Vec& y) { return y[0]; };
    CHECK(std::abs(poisson_bracket(cx, cy, xs, ys) - 1.0) < 1e-9);
    CHECK(std::abs(poisson_bracket(cy, cx, xs, ys) + 1.0) < 1e-9);

    CHECK_THROWS_AS(poisson_bracket(f, f, xs, Vec{Complex(0, 0)}), std::invalid_argument);
}

TEST_CASE("hamiltonian lift") {
    SUBCASE("zero field") {
        auto zero = [](const Vec& v) { return Vec(v.size(), Complex(0, 0)); };
        const auto H = hamiltonian_lift(zero);
        CHECK(std::abs(H({Complex(1, 2)}, {Complex(3, 4)})) == 0.0);
    }
    SUBCASE("one-dimensional linear field") {
        auto field = [](const Vec& v) { return Vec{v[0]}; };
        const auto H = hamiltonian_lift(field);
        const Vec xs{Complex(0.7, 0.1)}, ys{Complex(-0.4, 0.9)};
        CHECK(std::abs(H(xs, ys) + ys[0] * xs[0]) == 0.0);
        // xdot = -dH/dy = X(x)
        auto dHdy = [&](double h) {
            Vec yp = ys, ym = ys;
            yp[0] += h;
            ym[0] -= h;
            return (H(xs, yp) - H(xs, ym)) / (2.0 * h);
        };
        CHECK(std::abs(-dHdy(1e-6) - xs[0]) < 1e-9);
    }
    SUBCASE("halphen flow through the lift") {
        auto field = [](const Vec& v) { return to_vec(halphen_rhs(state3_from_vec(v))); };
        const auto H = hamiltonian_lift(field);
        std::mt19937 rng(107u);
        const Vec xs{crand(rng), crand(rng), crand(rng)};
        const Vec ys{crand(rng), crand(rng), crand(rng)};
        const Vec fx = field(xs);
        for (std::size_t i = 0; i < 3; ++i) {
            auto f = [&](double h, int sign) {
                Vec y2 = ys;
                y2[i] += sign * h;
                return H(xs, y2);
            };
            const double h = 1e-6;
            const Complex xdot = -(f(h, +1) - f(h, -1)) / (2.0 * h);
            CHECK(std::abs(xdot - fx[i]) < 1e-8);
        }
    }
}

TEST_CASE("energy is conserved along the lifted flow") {
    const State4 s0{Complex(0.3, 0.1), Complex(0.2, -0.05), Complex(0.1, 0.02), Complex(1.0, 0.3)};
    IntegratorConfig cfg;
    cfg.atol = cfg.rtol = 1e-11;
    const auto traj = integrate(
        [](const Vec& v) { return to_vec(lifted_rhs(state4_from_vec(v))); }, to_vec(s0),
        {Complex(0, 0), Complex(0.5, 0.2)}, cfg);
    REQUIRE(traj.completed);
    const Complex f0 = hamiltonian_F(s0);
    const Complex f1 = hamiltonian_F(state4_from_vec(traj.endpoint()));
    CHECK(std::abs(f1 - f0) < 1e-6);
}

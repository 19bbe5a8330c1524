#include "halphen/frobenius.hpp"

#include <cmath>
#include <stdexcept>

#include "halphen/dynamics.hpp"
#include "halphen/qseries.hpp"

namespace halphen::frobenius {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

void require_upper_half(Complex t3, const char* who) {
    if (!(t3.imag() > 0.0)) throw std::invalid_argument(std::string(who) + ": requires Im t3 > 0");
}

Mat3 zero_mat() {
    Mat3 m{};
    for (auto& row : m) row.fill(Complex(0.0, 0.0));
    return m;
}

}  // namespace

GammaJet gamma_data(Complex t3, int order) {
    require_upper_half(t3, "gamma_data");
    const QSeries e2 = eisenstein(2, order);
    const QSeries d1 = e2.derive_q();
    const QSeries d2 = d1.derive_q();
    const QSeries d3 = d2.derive_q();
    const Complex a = kI * kPi / 3.0;
    const Complex two_pi_i = 2.0 * kPi * kI;  // d/dtau = 2 pi i * (q d/dq)
    GammaJet jet;
    jet.g = a * e2.eval(t3).value;
    jet.d1 = a * two_pi_i * d1.eval(t3).value;
    jet.d2 = a * two_pi_i * two_pi_i * d2.eval(t3).value;
    jet.d3 = a * two_pi_i * two_pi_i * two_pi_i * d3.eval(t3).value;
    return jet;
}

Complex potential_F(const FlatPoint& p, int order) {
    const GammaJet jet = gamma_data(p.t3, order);
    const Complex t2sq = p.t2 * p.t2;
    return 0.5 * p.t1 * p.t1 * p.t3 + 0.5 * p.t1 * t2sq - t2sq * t2sq / 16.0 * jet.g;
}

Mat3 eta_metric() {
    Mat3 m = zero_mat();
    m[0][2] = m[2][0] = 1.0;
    m[1][1] = 1.0;
    return m;
}

Mat3 eta_inverse() { return eta_metric(); }  // the antidiagonal is an involution

Tensor3 structure_constants(const FlatPoint& p, int order) {
    const GammaJet jet = gamma_data(p.t3, order);
    const Complex t2 = p.t2;
    const Complex t2sq = t2 * t2;

    Tensor3 c{};
    for (auto& m : c) m = zero_mat();

    // Unity axis.
    c[0][0][0] = 1.0;
    c[0][1][1] = 1.0;
    c[0][2][2] = 1.0;

    c[1][1][0] = -0.75 * t2sq * jet.d1;
    c[1][1][1] = -1.5 * t2 * jet.g;
    c[1][1][2] = 1.0;

    c[1][2][0] = -0.25 * t2sq * t2 * jet.d2;
    c[1][2][1] = -0.75 * t2sq * jet.d1;

    c[2][2][0] = -t2sq * t2sq / 16.0 * jet.d3;
    c[2][2][1] = -0.25 * t2sq * t2 * jet.d2;

    // Symmetrize the lower index pair.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j)
            for (int k = 0; k < 3; ++k) c[i][j][k] = c[j][i][k];
    return c;
}

namespace {

std::array<Complex, 3> algebra_product(const Tensor3& c, const std::array<Complex, 3>& a,
                                       const std::array<Complex, 3>& b) {
    std::array<Complex, 3> out{Complex(0), Complex(0), Complex(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[k] += c[i][j][k] * a[i] * b[j];
    return out;
}

}  // namespace

double associativity_check(const FlatPoint& p, int order) {
    const Tensor3 c = structure_constants(p, order);
    const std::array<Complex, 3> e2{Complex(0), Complex(1), Complex(0)};
    const std::array<Complex, 3> e3{Complex(0), Complex(0), Complex(1)};

    double residual = 0.0;
    auto assoc = [&](const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
        const auto lhs = algebra_product(c, algebra_product(c, a, a), b);
        const auto rhs = algebra_product(c, a, algebra_product(c, a, b));
        for (int k = 0; k < 3; ++k) residual = std::max(residual, std::abs(lhs[k] - rhs[k]));
    };
    assoc(e2, e3);
    assoc(e3, e2);
    return residual;
}

Complex wdvv_residual(const FlatPoint& p, int order) {
    const GammaJet jet = gamma_data(p.t3, order);
    const Complex t2 = p.t2, t2sq = t2 * t2;
    const Complex f_xxx = -1.5 * t2 * jet.g;
    const Complex f_xxy = -0.75 * t2sq * jet.d1;
    const Complex f_xyy = -0.25 * t2sq * t2 * jet.d2;
    const Complex f_yyy = -t2sq * t2sq / 16.0 * jet.d3;
    return f_xxy * f_xxy - f_yyy - f_xyy * f_xxx;
}

Mat3 intersection_form(const FlatPoint& p, int order) {
    const GammaJet jet = gamma_data(p.t3, order);
    const Complex t1 = p.t1, t2 = p.t2;
    const Complex t2sq = t2 * t2;
    Mat3 g = zero_mat();
    g[0][0] = -t2sq * t2sq / 8.0 * jet.d2;
    g[0][1] = g[1][0] = -3.0 / 8.0 * t2sq * t2 * jet.d1;
    g[0][2] = g[2][0] = t1;
    g[1][1] = t1 - 0.75 * t2sq * jet.g;
    g[1][2] = g[2][1] = 0.5 * t2;
    g[2][2] = 0.0;
    return g;
}

std::array<Complex, 4> char_poly(const FlatPoint& p, int order) {
    const GammaJet jet = gamma_data(p.t3, order);
    const Complex t1 = p.t1, t2 = p.t2;
    const Complex t2sq = t2 * t2;
    const Complex t2q = t2sq * t2sq;
    std::array<Complex, 4> c;
    c[0] = 1.0;
    c[1] = -3.0 * t1 + 0.75 * jet.g * t2sq;
    c[2] = 3.0 * t1 * t1 - 1.5 * t1 * t2sq * jet.g + 3.0 / 8.0 * t2q * jet.d1;
    c[3] = -t1 * t1 * t1 + 0.75 * t1 * t1 * t2sq * jet.g - 3.0 / 8.0 * t2q * t1 * jet.d1 +
           t2q * t2sq / 32.0 * jet.d2;
    return c;
}

std::array<Complex, 3> chazy_cubic_roots(Complex t3, int order) {
    const GammaJet jet = gamma_data(t3, order);
    return dynamics::sort_roots(dynamics::cubic_roots(jet.g, jet.d1, jet.d2));
}

std::array<Complex, 3> canonical_coords(const FlatPoint& p, int order) {
    require_upper_half(p.t3, "canonical_coords");
    if (p.t2 == Complex(0.0, 0.0))
        throw std::invalid_argument("canonical_coords: t2 = 0 coalesces the coordinates");
    const auto roots = chazy_cubic_roots(p.t3, order);
    std::array<Complex, 3> u;
    for (int k = 0; k < 3; ++k) u[k] = p.t1 + 0.5 * p.t2 * p.t2 * roots[k];
    return u;
}

namespace {

// Finite-difference Jacobian d(u_i)/d(t_j) with branch-consistent root
// labels: every evaluation matches its roots to the center labels.
Mat3 numerical_jacobian(const FlatPoint& p, int order) {
    const auto center = chazy_cubic_roots(p.t3, order);
    auto coords_matched = [&](const FlatPoint& q) {
        const GammaJet jet = gamma_data(q.t3, order);
        auto roots = dynamics::cubic_roots(jet.g, jet.d1, jet.d2);
        // nearest-to-center relabeling
        std::array<Complex, 3> lab = roots;
        double best = 1e300;
        constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& pe : perms) {
            double cost = 0.0;
            for (int i = 0; i < 3; ++i) cost += std::abs(roots[pe[i]] - center[i]);
            if (cost < best) {
                best = cost;
                for (int i = 0; i < 3; ++i) lab[i] = roots[pe[i]];
            }
        }
        std::array<Complex, 3> u;
        for (int k = 0; k < 3; ++k) u[k] = q.t1 + 0.5 * q.t2 * q.t2 * lab[k];
        return u;
    };

    Mat3 jac = zero_mat();
    for (int j = 0; j < 3; ++j) {
        auto shift = [&](double step) {
            FlatPoint q = p;
            (j == 0 ? q.t1 : j == 1 ? q.t2 : q.t3) += step;
            return coords_matched(q);
        };
        const double h = 1e-4;
        auto der = [&](double step) {
            const auto up = shift(step), um = shift(-step);
            std::array<Complex, 3> d;
            for (int i = 0; i < 3; ++i) d[i] = (up[i] - um[i]) / (2.0 * step);
            return d;
        };
        const auto dh = der(h), dh2 = der(h / 2.0);
        for (int i = 0; i < 3; ++i) jac[i][j] = (4.0 * dh2[i] - dh[i]) / 3.0;
    }
    return jac;
}

double deviation_from_inverse(const Mat3& m, const Mat3& jac) {
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < 3; ++j) acc += m[i][j] * jac[k][j];  // M * J^T
            dev = std::max(dev, std::abs(acc - (i == k ? 1.0 : 0.0)));
        }
    return dev;
}

}  // namespace

ChangeOfBasis change_of_basis(const FlatPoint& p, int order) {
    if (p.t2 == Complex(0.0, 0.0)) throw std::invalid_argument("change_of_basis: t2 = 0");
    const auto n = chazy_cubic_roots(p.t3, order);
    const Complex n1 = n[0], n2 = n[1], n3 = n[2];
    const Complex t2 = p.t2, t2sq = t2 * t2, t2cu = t2sq * t2;
    const Complex denom = t2cu * (n2 - n1) * (n1 - n3) * (n2 - n3);
    if (std::abs(denom) == 0.0) throw std::invalid_argument("change_of_basis: coincident roots");

    const Complex x_row = 0.5 * t2cu * (n2 * n2 * (n1 - n3) - n3 * n3 * (n1 - n2));
    const Complex y_row = 0.5 * t2cu * (n1 * n1 * (n3 - n2) - n3 * n3 * (n1 - n2));
    const Complex z_row = 0.5 * t2cu * (n1 * n1 * (n3 - n2) - n2 * n2 * (n3 - n1));
    const Complex z_row_literal = 0.5 * t2cu * (n1 * n1 * (n3 - n2) - n2 * n2 * (n3 - n2));

    ChangeOfBasis out;
    out.m = zero_mat();
    out.m[0] = {x_row / denom, t2sq * n1 * (n3 - n2) / denom, t2 * (n3 - n2) / denom};
    out.m[1] = {y_row / denom, t2sq * n2 * (n1 - n3) / denom, t2 * (n1 - n3) / denom};
    out.m[2] = {z_row / denom, t2sq * n3 * (n2 - n1) / denom, t2 * (n2 - n1) / denom};
    out.m_literal_row3 = {z_row_literal / denom, out.m[2][1], out.m[2][2]};

    const Mat3 jac = numerical_jacobian(p, order);
    out.fd_deviation = deviation_from_inverse(out.m, jac);
    Mat3 literal = out.m;
    literal[2] = out.m_literal_row3;
    out.fd_deviation_literal = deviation_from_inverse(literal, jac);
    return out;
}

namespace {

OmegaState omega_from_roots(const std::array<Complex, 3>& n) {
    const Complex a = n[1] - n[0];  // N2 - N1
    const Complex b = n[0] - n[2];  // N1 - N3
    const Complex c = n[2] - n[1];  // N3 - N2
    OmegaState st;
    st.roots = n;
    st.s = -b / a;  // (N3 - N1)/(N2 - N1)
    if (std::abs(st.s) < 1e-14 || std::abs(st.s - 1.0) < 1e-14)
        throw std::invalid_argument("omega_solution: s degenerates to 0 or 1");
    st.omega1 = n[0] / (2.0 * std::sqrt(a * b));
    st.omega2 = n[1] / (2.0 * std::sqrt(c * a));
    st.omega3 = n[2] / (2.0 * std::sqrt(b * c));
    return st;
}

bool crosses_negative_axis(Complex before, Complex after) {
    return before.real() < 0.0 && after.real() < 0.0 &&
           ((before.imag() < 0.0) != (after.imag() < 0.0));
}

}  // namespace

OmegaState omega_solution(Complex t3, int order) {
    return omega_from_roots(chazy_cubic_roots(t3, order));
}

std::vector<OmegaState> omega_curve(const std::vector<Complex>& taus, int order) {
    if (taus.empty()) throw std::invalid_argument("omega_curve: empty path");
    const auto curve = dynamics::root_curve(taus, [order](Complex tau) {
        const GammaJet jet = gamma_data(tau, order);
        return std::array<Complex, 3>{jet.g, jet.d1, jet.d2};
    });

    std::vector<OmegaState> out;
    out.reserve(taus.size());
    std::array<Complex, 3> prev_rad{};
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const std::array<Complex, 3> n{curve.branches[0][i], curve.branches[1][i],
                                       curve.branches[2][i]};
        OmegaState st = omega_from_roots(n);
        const std::array<Complex, 3> rad{(n[1] - n[0]) * (n[0] - n[2]),
                                         (n[2] - n[1]) * (n[1] - n[0]),
                                         (n[0] - n[2]) * (n[2] - n[1])};
        if (i > 0) {
            const auto& prev = out.back();
            const std::array<Complex, 3> cur{st.omega1, st.omega2, st.omega3};
            const std::array<Complex, 3> before{prev.omega1, prev.omega2, prev.omega3};
            std::array<Complex*, 3> slots{&st.omega1, &st.omega2, &st.omega3};
            for (int k = 0; k < 3; ++k) {
                st.branch_flipped[k] = out.back().branch_flipped[k];
                if (std::abs(-cur[k] - before[k]) < std::abs(cur[k] - before[k])) {
                    *slots[k] = -cur[k];
                    st.branch_flipped[k] = !st.branch_flipped[k];
                }
                st.crossed_cut[k] = crosses_negative_axis(prev_rad[k], rad[k]);
            }
        }
        prev_rad = rad;
        out.push_back(st);
    }
    return out;
}

}  // namespace halphen::frobenius

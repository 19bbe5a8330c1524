#ifndef HALPHEN_FROBENIUS_HPP
#define HALPHEN_FROBENIUS_HPP

#include <array>
#include <complex>
#include <vector>

namespace halphen::frobenius {

using Complex = std::complex<double>;
using Mat3 = std::array<std::array<Complex, 3>, 3>;
using Tensor3 = std::array<Mat3, 3>;  // C[i][j][k] = C_ij^k

struct FlatPoint {
    Complex t1, t2, t3;  // Im t3 > 0
};

// gamma(t3) = (pi i / 3) E2(t3) together with its first three tau-derivatives,
// evaluated from the exact q-expansions of E2, D E2, D^2 E2, D^3 E2.
struct GammaJet {
    Complex g, d1, d2, d3;
};
GammaJet gamma_data(Complex t3, int order = 64);

// F = t1^2 t3 / 2 + t1 t2^2 / 2 - t2^4 gamma(t3) / 16.
Complex potential_F(const FlatPoint& p, int order = 64);

// Constant flat metric eta = dt2^2 + 2 dt1 dt3 and its inverse (equal here).
Mat3 eta_metric();
Mat3 eta_inverse();

// Closed-form structure constants C_ij^k of the Frobenius algebra at p.
Tensor3 structure_constants(const FlatPoint& p, int order = 64);

// Max-norm residual of (e2 e2) e3 - e2 (e2 e3) and (e3 e3) e2 - e3 (e3 e2).
double associativity_check(const FlatPoint& p, int order = 64);

// WDVV reduction for this potential: f_xxy^2 - f_yyy - f_xyy f_xxx,
// x = t2, y = t3, f = -t2^4 gamma(t3)/16.
Complex wdvv_residual(const FlatPoint& p, int order = 64);

// Intersection form g^{ij} = E^l C_l^{ij} with E = t1 d/dt1 + (t2/2) d/dt2.
Mat3 intersection_form(const FlatPoint& p, int order = 64);

// Coefficients [1, c2, c1, c0] of det(g - u eta^{-1}) as a cubic in u.
std::array<Complex, 4> char_poly(const FlatPoint& p, int order = 64);

// Canonical coordinates u_k = t1 + t2^2 N_k(t3) / 2, where N_k are the
// tracked cubic roots. Requires t2 != 0 (otherwise the u_k coalesce).
std::array<Complex, 3> canonical_coords(const FlatPoint& p, int order = 64);

// Rows of M express d/du_i in the d/dt_j basis; M is the transposed inverse
// of the Jacobian d(u)/d(t). `m` carries the corrected closed form; the
// printed closed form repeats a factor in its third row and is kept in
// `m_literal_row3` so the discrepancy stays visible.  fd_deviation* report
// max |M J^T - I| against a finite-difference Jacobian oracle.
struct ChangeOfBasis {
    Mat3 m;
    std::array<Complex, 3> m_literal_row3;
    double fd_deviation;
    double fd_deviation_literal;
};
ChangeOfBasis change_of_basis(const FlatPoint& p, int order = 64);

// The Euler-top companion system in s = (N3 - N1)/(N2 - N1). Square roots
// take the principal branch of each radicand; branch_flipped records signs
// chosen by continuity tracking in omega_curve.
struct OmegaState {
    Complex omega1, omega2, omega3;
    Complex s;
    std::array<Complex, 3> roots{};  // the tracked N_k behind this state
    std::array<bool, 3> branch_flipped{false, false, false};
    std::array<bool, 3> crossed_cut{false, false, false};
};
OmegaState omega_solution(Complex t3, int order = 64);
std::vector<OmegaState> omega_curve(const std::vector<Complex>& taus, int order = 64);

// Convenience: the three tracked roots of the cubic attached to gamma_data.
std::array<Complex, 3> chazy_cubic_roots(Complex t3, int order = 64);

}  // namespace halphen::frobenius

#endif

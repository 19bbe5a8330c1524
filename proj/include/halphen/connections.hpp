#ifndef HALPHEN_CONNECTIONS_HPP
#define HALPHEN_CONNECTIONS_HPP

#include <array>
#include <complex>
#include <functional>

#include "halphen/elliptic.hpp"
#include "halphen/qseries.hpp"

namespace halphen::connections {

using Complex = std::complex<double>;
using Map = std::function<Complex(Complex)>;

// {f,t}_1 = (d/dt) log f' and the Schwarzian {f,t}_2 = (d^2/dt^2) log f'
// - (1/2)((d/dt) log f')^2, from finite-difference derivatives of f.
// Rejects points where f' vanishes.
Complex bracket1(const Map& f, Complex t);
Complex schwarzian(const Map& f, Complex t);

// Residual of E2((a tau + b)/(c tau + d)) (c tau + d)^{-2}
//            - E2(tau) - (6/(i pi)) c/(c tau + d)
// for an integer matrix with det = 1.
Complex e2_affine_check(const std::array<long, 4>& m, Complex tau, int order = 64);

// Curvature r' - r^2/2 of the affine connection r = (pi i/3) E2. The series
// identity places it at (pi^2/18) E4; `exact` reports the coefficientwise
// check -(2/3) D E2 + E2^2/18 = E4/18 in the rational ring.
struct CurvatureReport {
    Complex value;
    bool exact;
};
CurvatureReport affine_curvature(Complex tau, int order = 64);

// D - (k/6) E2, sending weight-2k forms to weight 2k+2; exact in the ring.
QSeries serre_derivative(int k, const QSeries& s);

struct BidifferentialValue {
    Complex u, v;
    Complex value;           // full kernel value
    Complex singular_coeff;  // coefficient of 1/(u-v)^2, always 1 here
    Complex regular;         // value - 1/(u-v)^2
};

// K(u,v) = wp(u - v; 1, tau) + (pi^2/3) E2(tau).
BidifferentialValue bergman_kernel(Complex u, Complex v, Complex tau, double tol = 1e-12,
                                   int order = 64);

// K(u,v) + (log theta[ch])''(0): Bergman kernel shifted by the second
// log-derivative of an even theta constant. Rejects odd characteristics and
// vanishing theta constants.
BidifferentialValue klein_bidifferential(const elliptic::ThetaChar& ch, Complex u, Complex v,
                                         Complex tau, double tol = 1e-12, int order = 64);

// 6 H(u,u) of the Klein bidifferential; on the diagonal the wp finite part
// drops out, leaving 6 [ (pi^2/3) E2 + (log theta[ch])''(0) ].
Complex wirtinger_connection(const elliptic::ThetaChar& ch, Complex tau, double tol = 1e-12,
                             int order = 64);

// Projective connection of the even-characteristic average; identically zero.
Complex klein_invariant_connection(Complex tau, double tol = 1e-12, int order = 64);

// a-period of the Bergman kernel: 64-node Gauss-Legendre over one horizontal
// period, offset 0.1 above v to clear the pole.
Complex bergman_a_period(Complex v, Complex tau, double tol = 1e-12, int order = 64);

// Characteristic <-> half-period dictionaries for the -6 e_k identification.
// `statement` lists (0,0),(1,0),(0,1) for e1,e2,e3; `derived` is the order
// the translation formulas wp(u + omega_k) actually produce, namely
// (1,0),(0,1),(0,0). The two disagree; verification reports both.
elliptic::ThetaChar char_for_e_statement(int k);
elliptic::ThetaChar char_for_e_derived(int k);

}  // namespace halphen::connections

#endif

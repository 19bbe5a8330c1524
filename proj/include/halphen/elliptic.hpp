#ifndef HALPHEN_ELLIPTIC_HPP
#define HALPHEN_ELLIPTIC_HPP

#include <array>
#include <complex>

namespace halphen::elliptic {

using Complex = std::complex<double>;

// A point tau in the upper half plane. All lattice machinery below works in
// the fixed normalization 2*omega1 = 1, 2*omega2 = tau, i.e. on the lattice
// Z + tau*Z; other lattices reduce to this one through wp_lattice.
struct ModularPoint {
    Complex tau;

    explicit ModularPoint(Complex t);
    Complex theta_nome() const;    // exp(i pi tau)
    Complex modular_nome() const;  // exp(2 i pi tau)
};

// Genus-one theta characteristic (eps, delta) in {0,1}^2. Even iff eps*delta
// is even; theta[eps;delta](-z) = (-1)^{eps delta} theta[eps;delta](z).
struct ThetaChar {
    int eps = 0;
    int delta = 0;

    bool even() const { return (eps * delta) % 2 == 0; }
    friend bool operator==(const ThetaChar&, const ThetaChar&) = default;
};

// theta[eps;delta](z, tau) = sum_n exp(i pi (n+eps/2)^2 tau
//                                      + 2 pi i (n+eps/2)(z+delta/2)).
Complex theta_char(const ThetaChar& ch, Complex z, Complex tau, double tol = 1e-14);

// Value plus the first three z-derivatives, differentiated term by term.
std::array<Complex, 4> theta_char_jet(const ThetaChar& ch, Complex z, Complex tau,
                                      double tol = 1e-14);

// The four classical Jacobi series with nome q = exp(i pi tau):
//   k=1:  2 sum q^{(n+1/2)^2} cos((2n+1) pi z)        (characteristic [1;0])
//   k=2:  1 + 2 sum (-1)^n q^{n^2} cos(2 n pi z)       (characteristic [0;1])
//   k=3:  1 + 2 sum q^{n^2} cos(2 n pi z)              (characteristic [0;0])
// The odd sine series 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z) is exposed
// separately as theta_odd; by the characteristic definition it equals
// -theta[1;1], and tests reference characteristics to stay convention-proof.
Complex jacobi_theta(int k, Complex z, Complex tau);
Complex theta_odd(Complex z, Complex tau);

// Weierstrass functions on the lattice Z + tau*Z (periods 2*omega1 = 1,
// 2*omega2 = tau). Square-shell lattice summation; the far tail is restored
// analytically from the Eisenstein sums sum' w^{-4}, w^{-6}, w^{-8}, whose
// exact values come from the E4/E6 q-expansions. Rejects u within 1e-12 of
// a lattice point; throws if the shell cap (400) cannot meet tol.
Complex wp(Complex u, Complex tau, double tol = 1e-12);
Complex wp_prime(Complex u, Complex tau, double tol = 1e-12);

// General-lattice helper: periods (p1, p2) reduce by homogeneity,
// wp(u; p1, p2) = wp(u/p1; p2/p1) / p1^2.
Complex wp_lattice(Complex u, Complex p1, Complex p2, double tol = 1e-12);

struct EllipticConstants {
    Complex e1, e2, e3;  // wp at the half periods 1/2, tau/2, (1+tau)/2
    Complex g2, g3;      // invariants, from E4 and E6
    Complex eta1;        // zeta(omega1) = (pi^2/6) E2(tau) in this normalization
};

EllipticConstants elliptic_constants(Complex tau, double tol = 1e-12, int order = 64);

}  // namespace halphen::elliptic

#endif

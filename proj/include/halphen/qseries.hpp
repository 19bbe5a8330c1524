#ifndef HALPHEN_QSERIES_HPP
#define HALPHEN_QSERIES_HPP

#include <complex>
#include <vector>

#include "halphen/rational.hpp"

namespace halphen {

// Truncated power series in the nome q with exact rational coefficients.
// A series of order N stores the coefficients of q^0 .. q^N inclusive.
// Arithmetic between two series truncates to the smaller order; nothing is
// ever extrapolated past what both operands know.
class QSeries {
  public:
    explicit QSeries(std::vector<Rational> coeffs);

    static QSeries zero(int order);
    static QSeries one(int order);
    // c * q^n, padded with zeros up to `order`
    static QSeries monomial(int n, int order, const Rational& c = Rational(1));

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int n) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    QSeries truncated(int order) const;

    QSeries scaled(const Rational& c) const;
    // D = q d/dq, the modular derivative: (1/2 pi i) d/dtau on q-expansions.
    QSeries derive_q() const;

    struct Eval {
        std::complex<double> value;
        // |a_N| |q|^{N+1} / (1 - |q|), a geometric estimate from the last
        // retained coefficient.
        double tail_bound;
    };
    // Horner evaluation at q = exp(2 pi i tau). Requires Im tau > 0.
    Eval eval(std::complex<double> tau) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend bool operator==(const QSeries& a, const QSeries& b);

  private:
    std::vector<Rational> coeffs_;
};

// sigma_k(n) = sum of k-th powers of the divisors of n. Rejects n = 0.
Integer sigma(int k, long n);

// Normalized Eisenstein series E2, E4, E6 truncated at q^order:
//   E2 = 1 - 24 sum sigma_1(n) q^n
//   E4 = 1 + 240 sum sigma_3(n) q^n
//   E6 = 1 - 504 sum sigma_5(n) q^n
QSeries eisenstein(int weight, int order);

}  // namespace halphen

#endif

#ifndef HALPHEN_RATIONAL_HPP
#define HALPHEN_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <string>

namespace halphen {

// Exact rational scalar. mpq_class keeps values canonicalized, so equality
// is plain comparison and there is never any rounding.
using Rational = mpq_class;
using Integer = mpz_class;

inline double to_double(const Rational& r) { return r.get_d(); }

// mpq_class's two-argument constructor skips canonicalization, which GMP
// comparisons rely on; route every num/den literal through here.
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string num_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string den_string(const Rational& r) { return r.get_den().get_str(); }

// Complex number with exact rational real and imaginary parts. Used by the
// tests and by symbolic identity checks where a residual must be exactly
// zero rather than zero to rounding.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int n) : re(n) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

}  // namespace halphen

#endif

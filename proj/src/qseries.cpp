#include "halphen/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halphen {

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QSeries: empty coefficient list");
}

QSeries QSeries::zero(int order) {
    if (order < 0) throw std::invalid_argument("QSeries: negative order");
    return QSeries(std::vector<Rational>(static_cast<size_t>(order) + 1, Rational(0)));
}

QSeries QSeries::one(int order) {
    QSeries s = zero(order);
    s.coeffs_[0] = 1;
    return s;
}

QSeries QSeries::monomial(int n, int order, const Rational& c) {
    if (n < 0 || n > order) throw std::invalid_argument("QSeries: monomial degree out of range");
    QSeries s = zero(order);
    s.coeffs_[static_cast<size_t>(n)] = c;
    return s;
}

const Rational& QSeries::coeff(int n) const {
    if (n < 0 || n > order()) throw std::out_of_range("QSeries: coefficient index out of range");
    return coeffs_[static_cast<size_t>(n)];
}

bool QSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

QSeries QSeries::truncated(int order) const {
    if (order < 0 || order > this->order()) throw std::invalid_argument("QSeries: bad truncation order");
    return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

QSeries QSeries::scaled(const Rational& c) const {
    std::vector<Rational> out(coeffs_.size());
    for (size_t n = 0; n < coeffs_.size(); ++n) out[n] = coeffs_[n] * c;
    return QSeries(std::move(out));
}

QSeries QSeries::derive_q() const {
    std::vector<Rational> out(coeffs_.size());
    for (size_t n = 0; n < coeffs_.size(); ++n) out[n] = coeffs_[n] * Rational(static_cast<long>(n));
    return QSeries(std::move(out));
}

QSeries::Eval QSeries::eval(std::complex<double> tau) const {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("QSeries::eval: requires Im tau > 0");
    const double two_pi = 2.0 * M_PI;
    const std::complex<double> q = std::exp(std::complex<double>(0.0, two_pi) * tau);
    std::complex<double> acc(0.0, 0.0);
    for (int n = order(); n >= 0; --n) acc = acc * q + to_double(coeffs_[static_cast<size_t>(n)]);
    const double qa = std::abs(q);
    const double last = std::fabs(to_double(coeffs_.back()));
    const double tail = last * std::pow(qa, order() + 1) / (1.0 - qa);
    return {acc, tail};
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<Rational> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out[static_cast<size_t>(k)] = a.coeffs_[k] + b.coeffs_[k];
    return QSeries(std::move(out));
}

QSeries operator-(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<Rational> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out[static_cast<size_t>(k)] = a.coeffs_[k] - b.coeffs_[k];
    return QSeries(std::move(out));
}

QSeries operator-(const QSeries& a) { return a.scaled(Rational(-1)); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<Rational> out(static_cast<size_t>(n) + 1, Rational(0));
    for (int i = 0; i <= n; ++i) {
        if (a.coeffs_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; i + j <= n; ++j)
            out[static_cast<size_t>(i + j)] += a.coeffs_[static_cast<size_t>(i)] * b.coeffs_[static_cast<size_t>(j)];
    }
    return QSeries(std::move(out));
}

bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

Integer sigma(int k, long n) {
    if (n < 1) throw std::invalid_argument("sigma: n must be >= 1");
    if (k < 1) throw std::invalid_argument("sigma: k must be >= 1");
    Integer total(0);
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        Integer dk, ek;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        total += dk;
        const long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(ek.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            total += ek;
        }
    }
    return total;
}

QSeries eisenstein(int weight, int order) {
    if (order < 0) throw std::invalid_argument("eisenstein: negative order");
    int k;
    long factor;
    switch (weight) {
        case 2: k = 1; factor = -24; break;
        case 4: k = 3; factor = 240; break;
        case 6: k = 5; factor = -504; break;
        default: throw std::invalid_argument("eisenstein: weight must be 2, 4 or 6");
    }
    std::vector<Rational> coeffs(static_cast<size_t>(order) + 1, Rational(0));
    coeffs[0] = 1;
    for (long n = 1; n <= order; ++n)
        coeffs[static_cast<size_t>(n)] = Rational(Integer(factor) * sigma(k, n));
    return QSeries(std::move(coeffs));
}

}  // namespace halphen

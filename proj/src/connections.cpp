#include "halphen/connections.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace halphen::connections {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

// Derivatives of an opaque analytic map. Third derivatives by central
// stencils are roundoff-limited near machine precision, so the step is much
// larger than for first derivatives; one Richardson pass trims truncation.
struct MapDerivs {
    Complex d1, d2, d3;
};

MapDerivs map_derivs(const Map& f, Complex t) {
    const double h0 = 1e-2 * std::max(1.0, std::abs(t));
    auto stencil = [&](double h) {
        const Complex fp1 = f(t + h), fm1 = f(t - h);
        const Complex fp2 = f(t + 2.0 * h), fm2 = f(t - 2.0 * h);
        const Complex f0 = f(t);
        MapDerivs d;
        d.d1 = (fp1 - fm1) / (2.0 * h);
        d.d2 = (fp1 - 2.0 * f0 + fm1) / (h * h);
        d.d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
        return d;
    };
    const MapDerivs a = stencil(h0), b = stencil(h0 / 2.0);
    return {(4.0 * b.d1 - a.d1) / 3.0, (4.0 * b.d2 - a.d2) / 3.0, (4.0 * b.d3 - a.d3) / 3.0};
}

}  // namespace

Complex bracket1(const Map& f, Complex t) {
    const MapDerivs d = map_derivs(f, t);
    if (std::abs(d.d1) < 1e-12) throw std::invalid_argument("bracket1: f' vanishes at t");
    return d.d2 / d.d1;
}

Complex schwarzian(const Map& f, Complex t) {
    const MapDerivs d = map_derivs(f, t);
    if (std::abs(d.d1) < 1e-12) throw std::invalid_argument("schwarzian: f' vanishes at t");
    const Complex r = d.d2 / d.d1;
    return d.d3 / d.d1 - 1.5 * r * r;
}

Complex e2_affine_check(const std::array<long, 4>& m, Complex tau, int order) {
    const long a = m[0], b = m[1], c = m[2], d = m[3];
    if (a * d - b * c != 1) throw std::invalid_argument("e2_affine_check: matrix must have det 1");
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("e2_affine_check: Im tau > 0 required");
    const QSeries e2 = eisenstein(2, order);
    const Complex cd = static_cast<double>(c) * tau + static_cast<double>(d);
    const Complex moved = (static_cast<double>(a) * tau + static_cast<double>(b)) / cd;
    const Complex lhs = e2.eval(moved).value / (cd * cd);
    const Complex rhs = e2.eval(tau).value + 6.0 / (kI * kPi) * static_cast<double>(c) / cd;
    return lhs - rhs;
}

CurvatureReport affine_curvature(Complex tau, int order) {
    const QSeries e2 = eisenstein(2, order);
    const QSeries e4 = eisenstein(4, order);
    // r = (pi i/3) E2, r' - r^2/2 with ' = d/dtau = 2 pi i D; the pi^2 factor
    // clears to the ring identity  -(2/3) D E2 + E2^2/18 = E4/18.
    const QSeries lhs = e2.derive_q().scaled(frac(-2, 3)) + (e2 * e2).scaled(frac(1, 18));
    const bool exact = (lhs - e4.scaled(frac(1, 18))).is_zero();

    const Complex r = kI * kPi / 3.0 * e2.eval(tau).value;
    const Complex rp = kI * kPi / 3.0 * 2.0 * kPi * kI * e2.derive_q().eval(tau).value;
    return {rp - 0.5 * r * r, exact};
}

QSeries serre_derivative(int k, const QSeries& s) {
    const QSeries e2 = eisenstein(2, s.order());
    return s.derive_q() - (e2 * s).scaled(frac(k, 6));
}

namespace {

Complex e2_value(Complex tau, int order) { return eisenstein(2, order).eval(tau).value; }

Complex log_theta_second(const elliptic::ThetaChar& ch, Complex tau, double tol) {
    const auto jet = elliptic::theta_char_jet(ch, Complex(0.0, 0.0), tau, tol);
    if (std::abs(jet[0]) < 1e-12)
        throw std::invalid_argument("klein_bidifferential: vanishing theta constant");
    const Complex ratio = jet[1] / jet[0];
    return jet[2] / jet[0] - ratio * ratio;
}

}  // namespace

BidifferentialValue bergman_kernel(Complex u, Complex v, Complex tau, double tol, int order) {
    const Complex d = u - v;
    const Complex value = elliptic::wp(d, tau, tol) + kPi * kPi / 3.0 * e2_value(tau, order);
    return {u, v, value, Complex(1.0, 0.0), value - 1.0 / (d * d)};
}

BidifferentialValue klein_bidifferential(const elliptic::ThetaChar& ch, Complex u, Complex v,
                                         Complex tau, double tol, int order) {
    if (!ch.even()) throw std::invalid_argument("klein_bidifferential: characteristic must be even");
    BidifferentialValue k = bergman_kernel(u, v, tau, tol, order);
    const Complex shift = log_theta_second(ch, tau, tol);
    k.value += shift;
    k.regular += shift;
    return k;
}

Complex wirtinger_connection(const elliptic::ThetaChar& ch, Complex tau, double tol, int order) {
    if (!ch.even()) throw std::invalid_argument("wirtinger_connection: characteristic must be even");
    const Complex diag = kPi * kPi / 3.0 * e2_value(tau, order) + log_theta_second(ch, tau, tol);
    return 6.0 * diag;
}

Complex klein_invariant_connection(Complex tau, double tol, int order) {
    Complex avg(0.0, 0.0);
    for (const auto& ch : {elliptic::ThetaChar{0, 0}, elliptic::ThetaChar{1, 0},
                           elliptic::ThetaChar{0, 1}})
        avg += log_theta_second(ch, tau, tol);
    return 6.0 * (kPi * kPi / 3.0 * e2_value(tau, order) + avg / 3.0);
}

Complex bergman_a_period(Complex v, Complex tau, double tol, int order) {
    const Complex c0 = Complex(v.real(), v.imag() + 0.1);
    using gauss = boost::math::quadrature::gauss<double, 64>;
    Complex acc(0.0, 0.0);
    // Nodes come in +/- pairs over [-1, 1]; map to [0, 1].
    for (std::size_t i = 0; i < gauss::abscissa().size(); ++i) {
        const double x = gauss::abscissa()[i];
        const double w = gauss::weights()[i];
        const auto eval = [&](double node) {
            return bergman_kernel(c0 + 0.5 * (node + 1.0), v, tau, tol, order).value;
        };
        acc += w * eval(x);
        if (x != 0.0) acc += w * eval(-x);
    }
    return 0.5 * acc;
}

elliptic::ThetaChar char_for_e_statement(int k) {
    switch (k) {
        case 1: return {0, 0};
        case 2: return {1, 0};
        case 3: return {0, 1};
        default: throw std::invalid_argument("char_for_e: k must be 1, 2 or 3");
    }
}

elliptic::ThetaChar char_for_e_derived(int k) {
    switch (k) {
        case 1: return {1, 0};
        case 2: return {0, 1};
        case 3: return {0, 0};
        default: throw std::invalid_argument("char_for_e: k must be 1, 2 or 3");
    }
}

}  // namespace halphen::connections

#include "halphen/elliptic.hpp"

#include <cmath>
#include <stdexcept>

#include "halphen/qseries.hpp"

namespace halphen::elliptic {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

void require_upper_half(Complex tau, const char* who) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument(std::string(who) + ": requires Im tau > 0");
}

// Summand of the characteristic theta series for index m = n + eps/2,
// with derivative weight (2 pi i m)^k attached by the caller.
struct ThetaAccumulator {
    std::array<Complex, 4> jet{Complex(0), Complex(0), Complex(0), Complex(0)};

    void add(Complex term, Complex freq) {
        Complex w(1.0, 0.0);
        for (auto& j : jet) {
            j += w * term;
            w *= freq;
        }
    }
};

}  // namespace

ModularPoint::ModularPoint(Complex t) : tau(t) { require_upper_half(t, "ModularPoint"); }

Complex ModularPoint::theta_nome() const { return std::exp(kI * kPi * tau); }
Complex ModularPoint::modular_nome() const { return std::exp(kI * 2.0 * kPi * tau); }

std::array<Complex, 4> theta_char_jet(const ThetaChar& ch, Complex z, Complex tau, double tol) {
    require_upper_half(tau, "theta_char");
    if (!(tol > 0.0)) throw std::invalid_argument("theta_char: tol must be positive");
    if ((ch.eps != 0 && ch.eps != 1) || (ch.delta != 0 && ch.delta != 1))
        throw std::invalid_argument("theta_char: characteristic entries must be 0 or 1");

    const Complex zs = z + 0.5 * static_cast<double>(ch.delta);
    const double y = tau.imag();
    const double zim = std::abs(zs.imag());
    const double half = 0.5 * static_cast<double>(ch.eps);

    ThetaAccumulator acc;
    constexpr int kMaxTerms = 20000;
    int quiet = 0;
    for (int n = 0; n < kMaxTerms; ++n) {
        const double m = static_cast<double>(n) + half;
        // Pair the indices m and -m; for eps = 0 the n = 0 term is its own pair.
        const Complex phase = std::exp(kI * kPi * (m * m) * tau);
        const Complex freq = 2.0 * kPi * kI * m;
        const Complex plus = phase * std::exp(freq * zs);
        acc.add(plus, freq);
        if (!(ch.eps == 0 && n == 0)) {
            const Complex minus = phase * std::exp(-freq * zs);
            acc.add(minus, -freq);
        }
        // Crude majorant of everything past this index.
        const double mag = std::exp(-kPi * m * m * y + 2.0 * kPi * m * zim);
        const double weight = std::pow(2.0 * kPi * (m + 1.0), 3);
        if (2.0 * weight * mag < tol * (1.0 + std::abs(acc.jet[0]))) {
            if (++quiet >= 2) return acc.jet;
        } else {
            quiet = 0;
        }
    }
    throw std::runtime_error("theta_char: series did not converge (bad tau?)");
}

Complex theta_char(const ThetaChar& ch, Complex z, Complex tau, double tol) {
    return theta_char_jet(ch, z, tau, tol)[0];
}

namespace {

Complex jacobi_sum(int k, Complex z, Complex tau) {
    require_upper_half(tau, "jacobi_theta");
    const double y = tau.imag();
    const double zim = std::abs(z.imag());
    constexpr int kMaxTerms = 20000;
    constexpr double kTol = 1e-15;

    Complex acc = (k == 2 || k == 3) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    int quiet = 0;
    for (int n = (k == 2 || k == 3) ? 1 : 0; n < kMaxTerms; ++n) {
        const double m = (k == 2 || k == 3) ? static_cast<double>(n)
                                            : static_cast<double>(n) + 0.5;
        const Complex qpow = std::exp(kI * kPi * (m * m) * tau);
        Complex term;
        switch (k) {
            case 1: term = 2.0 * qpow * std::cos((2.0 * m) * kPi * z); break;
            case 2: term = 2.0 * ((n % 2 == 0) ? 1.0 : -1.0) * qpow * std::cos((2.0 * m) * kPi * z); break;
            case 3: term = 2.0 * qpow * std::cos((2.0 * m) * kPi * z); break;
            case 4: term = 2.0 * ((n % 2 == 0) ? 1.0 : -1.0) * qpow * std::sin((2.0 * m) * kPi * z); break;
            default: throw std::invalid_argument("jacobi_theta: index must be 1, 2 or 3");
        }
        acc += term;
        const double mag = 2.0 * std::exp(-kPi * m * m * y + 2.0 * kPi * m * zim);
        if (mag < kTol * (1.0 + std::abs(acc))) {
            if (++quiet >= 2) return acc;
        } else {
            quiet = 0;
        }
    }
    throw std::runtime_error("jacobi_theta: series did not converge");
}

}  // namespace

Complex jacobi_theta(int k, Complex z, Complex tau) {
    if (k < 1 || k > 3) throw std::invalid_argument("jacobi_theta: index must be 1, 2 or 3");
    return jacobi_sum(k, z, tau);
}

Complex theta_odd(Complex z, Complex tau) { return jacobi_sum(4, z, tau); }

namespace {

// min |a + b tau| over the boundary of the square max(|a|,|b|) = 1; the
// shell of index r then has every point at distance >= r * d0.
double unit_shell_distance(Complex tau) {
    const double t2 = std::norm(tau);
    // Segment a + tau, a in [-1,1]
    double a = std::clamp(-tau.real(), -1.0, 1.0);
    const double d_edge_b = std::abs(Complex(a, 0) + tau);
    // Segment 1 + b tau, b in [-1,1]
    double b = std::clamp(-tau.real() / t2, -1.0, 1.0);
    const double d_edge_a = std::abs(Complex(1, 0) + b * tau);
    return std::min(d_edge_a, d_edge_b);
}

struct LatticeSums {
    Complex principal;  // sum over shells of the requested summand
    Complex s4, s6, s8; // partial Eisenstein sums over the same shells
    int shells = 0;
};

// Reduce u into the centered fundamental cell of Z + tau*Z.
Complex reduce_to_cell(Complex u, Complex tau) {
    const double b = u.imag() / tau.imag();
    const double a = u.real() - b * tau.real();
    return u - std::round(a) - std::round(b) * tau;
}

// Full Eisenstein sums over Z + tau*Z from the exact q-expansions:
//   sum' w^{-4}  = (pi^4/45)   E4
//   sum' w^{-6}  = (2 pi^6/945) E6
//   sum' w^{-8}  = (pi^8/4725) E4^2
struct EisensteinTail {
    Complex g4, g6, g8;
};

EisensteinTail eisenstein_sums(Complex tau) {
    static const int kOrder = 64;
    const QSeries e4 = eisenstein(4, kOrder);
    const QSeries e6 = eisenstein(6, kOrder);
    const Complex v4 = e4.eval(tau).value;
    const Complex v6 = e6.eval(tau).value;
    const double p4 = std::pow(kPi, 4), p6 = std::pow(kPi, 6), p8 = std::pow(kPi, 8);
    return {p4 / 45.0 * v4, 2.0 * p6 / 945.0 * v6, p8 / 4725.0 * v4 * v4};
}

template <typename Summand>
LatticeSums shell_sum(Complex u, Complex tau, double tol, Summand&& summand) {
    constexpr int kShellCap = 400;
    const double d0 = unit_shell_distance(tau);
    const double ua = std::abs(u);

    LatticeSums out{};
    for (int r = 1; r <= kShellCap; ++r) {
        for (int m = -r; m <= r; ++m) {
            for (int n = -r; n <= r; ++n) {
                if (std::max(std::abs(m), std::abs(n)) != r) continue;
                const Complex w = Complex(m, 0) + static_cast<double>(n) * tau;
                out.principal += summand(w);
                const Complex w2 = w * w, w4 = w2 * w2;
                out.s4 += 1.0 / w4;
                out.s6 += 1.0 / (w4 * w2);
                out.s8 += 1.0 / (w4 * w4);
            }
        }
        out.shells = r;
        const double rd = r * d0;
        if (rd >= 2.0 * ua + 1.0 && r >= 4) {
            // Residual past shell r once the w^{-4,-6,-8} terms are restored
            // analytically; covers both the order-2 and order-3 summands.
            const double tail = 50.0 * (std::pow(ua, 7) + std::pow(ua, 8)) /
                                (std::pow(d0, 10) * std::pow(r, 8));
            if (tail < tol) return out;
        }
    }
    throw std::runtime_error("wp: lattice sum hit the 400-shell cap before reaching tol");
}

}  // namespace

Complex wp(Complex u, Complex tau, double tol) {
    require_upper_half(tau, "wp");
    if (!(tol > 0.0)) throw std::invalid_argument("wp: tol must be positive");
    u = reduce_to_cell(u, tau);
    if (std::abs(u) < 1e-12) throw std::invalid_argument("wp: u is within 1e-12 of a lattice point");

    const auto sums = shell_sum(u, tau, tol, [u](Complex w) {
        const Complex d = u + w;
        return 1.0 / (d * d) - 1.0 / (w * w);
    });
    const auto full = eisenstein_sums(tau);
    const Complex u2 = u * u;
    // Over complete shells the odd powers of w cancel; what survives past the
    // cutoff is sum 3u^2/w^4 + 5u^4/w^6 + 7u^6/w^8 + O(u^8/w^10).
    const Complex tail = 3.0 * u2 * (full.g4 - sums.s4) + 5.0 * u2 * u2 * (full.g6 - sums.s6) +
                         7.0 * u2 * u2 * u2 * (full.g8 - sums.s8);
    return 1.0 / u2 + sums.principal + tail;
}

Complex wp_prime(Complex u, Complex tau, double tol) {
    require_upper_half(tau, "wp_prime");
    if (!(tol > 0.0)) throw std::invalid_argument("wp_prime: tol must be positive");
    u = reduce_to_cell(u, tau);
    if (std::abs(u) < 1e-12) throw std::invalid_argument("wp_prime: u is within 1e-12 of a lattice point");

    const auto sums = shell_sum(u, tau, tol, [u](Complex w) {
        const Complex d = u + w;
        return 1.0 / (d * d * d);
    });
    const auto full = eisenstein_sums(tau);
    const Complex u2 = u * u;
    const Complex tail = -3.0 * u * (full.g4 - sums.s4) - 10.0 * u * u2 * (full.g6 - sums.s6) -
                         21.0 * u * u2 * u2 * (full.g8 - sums.s8);
    return -2.0 * (1.0 / (u2 * u) + sums.principal + tail);
}

Complex wp_lattice(Complex u, Complex p1, Complex p2, double tol) {
    if (p1 == Complex(0.0, 0.0)) throw std::invalid_argument("wp_lattice: zero period");
    Complex tau = p2 / p1;
    if (tau.imag() == 0.0) throw std::invalid_argument("wp_lattice: degenerate lattice");
    if (tau.imag() < 0.0) tau = -tau;  // (p1, -p2) spans the same lattice
    return wp(u / p1, tau, tol) / (p1 * p1);
}

EllipticConstants elliptic_constants(Complex tau, double tol, int order) {
    require_upper_half(tau, "elliptic_constants");
    EllipticConstants out;
    out.e1 = wp(0.5, tau, tol);
    out.e2 = wp(0.5 * tau, tau, tol);
    out.e3 = wp(0.5 * (1.0 + tau), tau, tol);

    const Complex v2 = eisenstein(2, order).eval(tau).value;
    const Complex v4 = eisenstein(4, order).eval(tau).value;
    const Complex v6 = eisenstein(6, order).eval(tau).value;
    out.g2 = 4.0 * std::pow(kPi, 4) / 3.0 * v4;
    out.g3 = 8.0 * std::pow(kPi, 6) / 27.0 * v6;
    out.eta1 = kPi * kPi / 6.0 * v2;
    return out;
}

}  // namespace halphen::elliptic

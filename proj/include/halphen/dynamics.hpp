#ifndef HALPHEN_DYNAMICS_HPP
#define HALPHEN_DYNAMICS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace halphen::dynamics {

using Complex = std::complex<double>;

template <class S>
struct State3T {
    S x{}, y{}, z{};
};

template <class S>
struct State4T {
    S x1{}, y1{}, z1{}, lambda{};
};

template <class S>
struct ChazyStateT {
    S g{}, g1{}, g2{};  // gamma, gamma', gamma''
};

using State3 = State3T<Complex>;
using State4 = State4T<Complex>;
using ChazyState = ChazyStateT<Complex>;

namespace detail {
inline bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
template <class S>
bool is_zero(const S& v) { return v.is_zero(); }
}  // namespace detail

// Flow of (E2, E4, E6) in the parameter t = -2 pi i tau.
template <class S>
State3T<S> ramanujan_rhs(const State3T<S>& s) {
    return {(s.y - s.x * s.x) / S(12), (s.z - s.x * s.y) / S(3), (s.y * s.y - s.x * s.z) / S(2)};
}

// Rescaled flow; as a vector field it is satisfied by
// (pi^2 E2/12, pi^4 E4/12, pi^6 E6/216) in t = (4i/pi) tau and equally by
// (E2/6, E4/3, E6/27) in t = 2 pi i tau.
template <class S>
State3T<S> rescaled_rhs(const State3T<S>& s) {
    return {s.x * s.x / S(2) - s.y / S(24), S(2) * s.x * s.y - S(3) * s.z,
            S(3) * s.x * s.z - s.y * s.y / S(6)};
}

// Darboux-Halphen flow in tau itself.
template <class S>
State3T<S> halphen_rhs(const State3T<S>& s) {
    return {-s.x * (s.y + s.z) + s.y * s.z, -s.y * (s.x + s.z) + s.x * s.z,
            -s.z * (s.x + s.y) + s.x * s.y};
}

// gamma''' = 6 gamma gamma'' - 9 gamma'^2, reduced to first order in tau.
template <class S>
ChazyStateT<S> chazy_rhs(const ChazyStateT<S>& s) {
    return {s.g1, s.g2, S(6) * s.g * s.g2 - S(9) * s.g1 * s.g1};
}

// F = q1^2 p1 / 2 - p1^2 p2^8 / 48 + 3 q1 q2 p2 on phase coordinates.
template <class S>
S hamiltonian_F_phase(const S& q1, const S& q2, const S& p1, const S& p2) {
    S p2sq = p2 * p2;
    S p2_8 = p2sq * p2sq;
    p2_8 = p2_8 * p2_8;
    return q1 * q1 * p1 / S(2) - p1 * p1 * p2_8 / S(48) + S(3) * q1 * q2 * p2;
}

// The same Hamiltonian through the identification q1 = x1, q2 = z1,
// p1 = lambda y1, p2 = lambda.
template <class S>
S hamiltonian_F(const State4T<S>& s) {
    return hamiltonian_F_phase(s.x1, s.z1, s.lambda * s.y1, s.lambda);
}

// Lifted flow on C^3 x C^x; its lambda = 1 slice is rescaled_rhs.
template <class S>
State4T<S> lifted_rhs(const State4T<S>& s) {
    if (detail::is_zero(s.lambda)) throw std::invalid_argument("lifted_rhs: lambda must be nonzero");
    S l2 = s.lambda * s.lambda;
    S l4 = l2 * l2;
    S l9 = l4 * l4 * s.lambda;
    return {s.x1 * s.x1 / S(2) - l9 * s.y1 / S(24), S(2) * s.x1 * s.y1 - S(3) * s.z1,
            -l9 * s.y1 * s.y1 / S(6) + S(3) * s.x1 * s.z1, -S(3) * s.lambda * s.x1};
}

// x = (X1+X2+X3)/3,
// y = (4/3)(sum Xi^2 - sum Xi Xj),
// z = (4/27)(2X1-X2-X3)(2X2-X3-X1)(2X3-X1-X2).
template <class S>
State3T<S> substitution_S5(const State3T<S>& s) {
    const S sum = s.x + s.y + s.z;
    const S quad = s.x * s.x + s.y * s.y + s.z * s.z - s.x * s.y - s.y * s.z - s.z * s.x;
    const S f1 = S(2) * s.x - s.y - s.z;
    const S f2 = S(2) * s.y - s.z - s.x;
    const S f3 = S(2) * s.z - s.x - s.y;
    return {sum / S(3), S(4) * quad / S(3), S(4) * f1 * f2 * f3 / S(27)};
}

// ---- adaptive integration along complex-parameter paths ----

struct IntegratorConfig {
    double atol = 1e-10;
    double rtol = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 200000;
};

using Vec = std::vector<Complex>;
using RhsFn = std::function<Vec(const Vec&)>;

struct TrajectorySample {
    Complex parameter;
    Vec state;
    double local_error;  // scaled error estimate of the step that produced it
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    bool completed = false;
    std::string failure;  // empty when completed

    const Vec& endpoint() const { return samples.back().state; }
};

// Embedded Dormand-Prince 5(4) along the straight segments joining the
// waypoints; the local error is controlled against atol + rtol*|state| per
// component. Integration stops with a diagnostic on step exhaustion or when
// the state norm passes 1e12 (the Halphen-type flows have movable
// singularities; running into one must not loop forever).
Trajectory integrate(const RhsFn& rhs, Vec initial, const std::vector<Complex>& waypoints,
                     const IntegratorConfig& cfg);

Vec to_vec(const State3& s);
Vec to_vec(const State4& s);
Vec to_vec(const ChazyState& s);
State3 state3_from_vec(const Vec& v);
State4 state4_from_vec(const Vec& v);
ChazyState chazy_from_vec(const Vec& v);

// ---- cubic roots and branch-tracked root curves ----

// Roots of N^3 + (3/2) g N^2 + (3/2) g1 N + (1/4) g2 = 0 (Cardano with the
// cancellation-free cube-root branch, then Newton polish). Rejects a
// vanishing discriminant at relative size 1e-12.
std::array<Complex, 3> cubic_roots(Complex g, Complex g1, Complex g2);

// Deterministic labeling used at the start of a root curve: descending real
// part, ties broken by descending imaginary part.
std::array<Complex, 3> sort_roots(std::array<Complex, 3> roots);

struct RootCurve {
    std::vector<Complex> taus;
    std::array<std::vector<Complex>, 3> branches;
};

// (gamma, gamma', gamma'') at a path point.
using CubicData = std::function<std::array<Complex, 3>(Complex)>;

// Tracks the three roots along the path, matching each sample to the
// previous one by the nearest-neighbor assignment; throws when two
// assignments are indistinguishable at 1e-12.
RootCurve root_curve(const std::vector<Complex>& taus, const CubicData& data);
RootCurve root_curve_from(const std::vector<Complex>& taus, const CubicData& data,
                          const std::array<Complex, 3>& initial_labels);

// ---- Hamiltonian utilities on doubled phase space ----

using PhaseFn = std::function<Complex(const Vec& xs, const Vec& ys)>;

// { f, g } = sum_i df/dx_i dg/dy_i - df/dy_i dg/dx_i by central differences
// (Richardson-extrapolated once).
Complex poisson_bracket(const PhaseFn& f, const PhaseFn& g, const Vec& xs, const Vec& ys);

// H(x, y) = -sum_i y_i X_i(x) for an autonomous field X on C^n.
PhaseFn hamiltonian_lift(const std::function<Vec(const Vec&)>& field);

}  // namespace halphen::dynamics

#endif

#include "halphen/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace halphen::dynamics {

namespace {

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kErr[7] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                            -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

}  // namespace

Trajectory integrate(const RhsFn& rhs, Vec initial, const std::vector<Complex>& waypoints,
                     const IntegratorConfig& cfg) {
    if (waypoints.size() < 2) throw std::invalid_argument("integrate: need at least two waypoints");
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
        if (waypoints[i] == waypoints[i + 1])
            throw std::invalid_argument("integrate: consecutive waypoints coincide");
    if (!(cfg.atol > 0.0) || !(cfg.rtol > 0.0) || !(cfg.initial_step > 0.0))
        throw std::invalid_argument("integrate: tolerances and initial step must be positive");

    constexpr double kBlowUp = 1e12;
    const std::size_t dim = initial.size();

    Trajectory traj;
    traj.samples.push_back({waypoints.front(), initial, 0.0});

    Vec y = std::move(initial);
    std::size_t steps = 0;
    double h = cfg.initial_step;

    for (std::size_t seg = 0; seg + 1 < waypoints.size(); ++seg) {
        const Complex a = waypoints[seg], b = waypoints[seg + 1];
        const double len = std::abs(b - a);
        const Complex dir = (b - a) / len;
        double sigma = 0.0;
        h = std::min(h, len);

        auto f = [&](const Vec& state) {
            Vec d = rhs(state);
            for (auto& c : d) c *= dir;
            return d;
        };

        while (sigma < len) {
            if (steps++ >= cfg.max_steps) {
                traj.failure = "max step count exhausted";
                return traj;
            }
            h = std::min(h, len - sigma);

            std::array<Vec, 7> k;
            k[0] = f(y);
            for (int s = 1; s < 7; ++s) {
                Vec ys = y;
                for (int j = 0; j < s; ++j) {
                    if (kA[s][j] == 0.0) continue;
                    for (std::size_t i = 0; i < dim; ++i) ys[i] += h * kA[s][j] * k[j][i];
                }
                k[s] = f(ys);
            }

            Vec y5 = y;
            double err = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                Complex e(0.0, 0.0);
                for (int s = 0; s < 7; ++s) {
                    if (kB5[s] != 0.0) y5[i] += h * kB5[s] * k[s][i];
                    if (kErr[s] != 0.0) e += h * kErr[s] * k[s][i];
                }
                const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(e) / scale);
            }

            if (err <= 1.0) {
                sigma += h;
                y = std::move(y5);
                traj.samples.push_back({a + sigma * dir, y, err});
                ++traj.accepted;
                if (inf_norm(y) > kBlowUp) {
                    traj.failure = "state norm exceeded 1e12 (movable singularity?)";
                    return traj;
                }
            } else {
                ++traj.rejected;
            }
            const double factor = 0.9 * std::pow(1.0 / std::max(err, 1e-10), 0.2);
            h *= std::clamp(factor, 0.2, 5.0);
        }
    }
    traj.completed = true;
    return traj;
}

Vec to_vec(const State3& s) { return {s.x, s.y, s.z}; }
Vec to_vec(const State4& s) { return {s.x1, s.y1, s.z1, s.lambda}; }
Vec to_vec(const ChazyState& s) { return {s.g, s.g1, s.g2}; }
State3 state3_from_vec(const Vec& v) { return {v.at(0), v.at(1), v.at(2)}; }
State4 state4_from_vec(const Vec& v) { return {v.at(0), v.at(1), v.at(2), v.at(3)}; }
ChazyState chazy_from_vec(const Vec& v) { return {v.at(0), v.at(1), v.at(2)}; }

std::array<Complex, 3> cubic_roots(Complex g, Complex g1, Complex g2) {
    const Complex A = 1.5 * g, B = 1.5 * g1, C = 0.25 * g2;
    // Depress: x = t - A/3.
    const Complex p = B - A * A / 3.0;
    const Complex q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    const Complex disc = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = 4.0 * std::pow(std::abs(p), 3) + 27.0 * std::norm(q);
    if (std::abs(disc) < 1e-12 * std::max(scale, std::numeric_limits<double>::min()))
        throw std::invalid_argument("cubic_roots: discriminant vanishes (repeated root)");

    const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + s;
    if (std::abs(u3) < std::abs(-q / 2.0 - s)) u3 = -q / 2.0 - s;
    const Complex u = std::exp(std::log(u3) / 3.0);

    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    std::array<Complex, 3> roots;
    Complex w(1.0, 0.0);
    for (auto& r : roots) {
        const Complex uu = w * u;
        r = uu - p / (3.0 * uu) - A / 3.0;
        w *= omega;
    }

    // Newton polish on the monic cubic.
    for (auto& r : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex f = ((r + A) * r + B) * r + C;
            const Complex df = (3.0 * r + 2.0 * A) * r + B;
            if (df == Complex(0.0, 0.0)) break;
            r -= f / df;
        }
    }
    return roots;
}

std::array<Complex, 3> sort_roots(std::array<Complex, 3> roots) {
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

namespace {

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

std::array<Complex, 3> match_to_previous(const std::array<Complex, 3>& prev,
                                         const std::array<Complex, 3>& next) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int best_idx = 0;
    for (int pi = 0; pi < 6; ++pi) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) cost += std::abs(next[kPerms[pi][i]] - prev[i]);
        if (cost < best) {
            second = best;
            best = cost;
            best_idx = pi;
        } else if (cost < second) {
            second = cost;
        }
    }
    if (second - best < 1e-12)
        throw std::runtime_error("root_curve: ambiguous branch pairing along the path");
    return {next[kPerms[best_idx][0]], next[kPerms[best_idx][1]], next[kPerms[best_idx][2]]};
}

RootCurve trace(const std::vector<Complex>& taus, const CubicData& data,
                std::array<Complex, 3> labels) {
    RootCurve out;
    out.taus = taus;
    for (auto& b : out.branches) b.reserve(taus.size());
    for (int i = 0; i < 3; ++i) out.branches[i].push_back(labels[i]);
    for (std::size_t s = 1; s < taus.size(); ++s) {
        const auto [g, g1, g2] = data(taus[s]);
        labels = match_to_previous(labels, cubic_roots(g, g1, g2));
        for (int i = 0; i < 3; ++i) out.branches[i].push_back(labels[i]);
    }
    return out;
}

}  // namespace

RootCurve root_curve(const std::vector<Complex>& taus, const CubicData& data) {
    if (taus.empty()) throw std::invalid_argument("root_curve: empty path");
    const auto [g, g1, g2] = data(taus.front());
    return trace(taus, data, sort_roots(cubic_roots(g, g1, g2)));
}

RootCurve root_curve_from(const std::vector<Complex>& taus, const CubicData& data,
                          const std::array<Complex, 3>& initial_labels) {
    if (taus.empty()) throw std::invalid_argument("root_curve: empty path");
    return trace(taus, data, initial_labels);
}

namespace {

Complex fd_partial(const PhaseFn& f, Vec xs, Vec ys, bool wrt_y, std::size_t i) {
    Complex& slot = wrt_y ? ys[i] : xs[i];
    const Complex c0 = slot;
    const double h = 1e-5 * std::max(1.0, std::abs(c0));
    auto diff = [&](double step) {
        slot = c0 + step;
        const Complex fp = f(xs, ys);
        slot = c0 - step;
        const Complex fm = f(xs, ys);
        slot = c0;
        return (fp - fm) / (2.0 * step);
    };
    const Complex dh = diff(h);
    const Complex dh2 = diff(h / 2.0);
    return (4.0 * dh2 - dh) / 3.0;
}

}  // namespace

Complex poisson_bracket(const PhaseFn& f, const PhaseFn& g, const Vec& xs, const Vec& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("poisson_bracket: dimension mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        acc += fd_partial(f, xs, ys, false, i) * fd_partial(g, xs, ys, true, i);
        acc -= fd_partial(f, xs, ys, true, i) * fd_partial(g, xs, ys, false, i);
    }
    return acc;
}

PhaseFn hamiltonian_lift(const std::function<Vec(const Vec&)>& field) {
    return [field](const Vec& xs, const Vec& ys) {
        const Vec fx = field(xs);
        if (fx.size() != ys.size()) throw std::invalid_argument("hamiltonian_lift: dimension mismatch");
        Complex h(0.0, 0.0);
        for (std::size_t i = 0; i < ys.size(); ++i) h -= ys[i] * fx[i];
        return h;
    };
}

}  // namespace halphen::dynamics

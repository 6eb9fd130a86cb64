// Internal numeric helpers shared by estimation.cpp and policy.cpp.
// Not part of the public API.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ranksiege/errors.hpp"

namespace ranksiege::detail {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double dist_sq(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Exact Euclidean projection onto the unit simplex (sort-based).
void project_simplex_inplace(Vec& v);

// Exact projection onto the ball ||x - center||^2 <= radius_sq.
void project_ball_inplace(Vec& v, std::span<const double> center, double radius_sq);

// Exact projection onto {x : x[hi] >= x[lo]}.
inline void project_halfspace_inplace(Vec& v, int hi, int lo) {
    if (v[hi] < v[lo]) {
        const double m = 0.5 * (v[hi] + v[lo]);
        v[hi] = m;
        v[lo] = m;
    }
}

// A closed convex constraint with an exact projector.
struct ConstraintSet {
    std::function<void(Vec&)> project;
    std::function<double(std::span<const double>)> violation;  // 0 when satisfied
};

ConstraintSet simplex_constraint();
ConstraintSet ball_constraint(Vec center, double radius_sq);
ConstraintSet halfspace_constraint(int hi, int lo);

// Dykstra's alternating projection onto the intersection of the given sets.
// Converges to the exact Euclidean projection; returns once every
// constraint is violated by at most `tol`, or after `max_cycles` cycles.
void dykstra_project(Vec& v, std::span<const ConstraintSet> sets, int max_cycles = 200,
                     double tol = 1e-12);

struct PgOptions {
    double step0 = 0.1;
    int max_iters = 2000;
    int max_backtracks = 60;
    double x_tol = 1e-14;  // stop when accepted moves become this small
};

struct PgResult {
    Vec x;
    double f = 0.0;
    int iters = 0;
};

// Monotone projected gradient ascent with a backtracking line search:
// candidate steps are projected before evaluation and accepted only when
// they improve the objective. Terminates when no step size in
// [step0 * 2^-max_backtracks, ~step0 * 64] improves.
PgResult pg_maximize(const std::function<double(std::span<const double>)>& objective,
                     const std::function<Vec(std::span<const double>)>& gradient,
                     const std::function<void(Vec&)>& project, Vec x0, const PgOptions& opts);

}  // namespace ranksiege::detail

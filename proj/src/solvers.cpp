#include "solvers.hpp"

#include <algorithm>
#include <limits>
#include <memory>

namespace ranksiege::detail {

void project_simplex_inplace(Vec& v) {
    if (v.empty()) throw InvalidArgumentError("cannot project an empty vector onto the simplex");
    Vec sorted = v;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double running = 0.0;
    double shift = sorted[0] - 1.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        running += sorted[j];
        const double candidate = (running - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) shift = candidate;
    }
    for (double& x : v) x = std::max(x - shift, 0.0);
}

void project_ball_inplace(Vec& v, std::span<const double> center, double radius_sq) {
    const double d2 = dist_sq(v, center);
    if (d2 <= radius_sq) return;
    const double scale = std::sqrt(radius_sq / d2);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = center[i] + scale * (v[i] - center[i]);
}

ConstraintSet simplex_constraint() {
    return ConstraintSet{
        [](Vec& v) { project_simplex_inplace(v); },
        [](std::span<const double> v) {
            double sum = 0.0, neg = 0.0;
            for (double x : v) {
                sum += x;
                neg = std::min(neg, x);
            }
            return std::max(std::abs(sum - 1.0), -neg);
        }};
}

ConstraintSet ball_constraint(Vec center, double radius_sq) {
    auto c = std::make_shared<Vec>(std::move(center));
    return ConstraintSet{
        [c, radius_sq](Vec& v) { project_ball_inplace(v, *c, radius_sq); },
        [c, radius_sq](std::span<const double> v) {
            return std::max(0.0, dist_sq(v, *c) - radius_sq);
        }};
}

ConstraintSet halfspace_constraint(int hi, int lo) {
    return ConstraintSet{
        [hi, lo](Vec& v) { project_halfspace_inplace(v, hi, lo); },
        [hi, lo](std::span<const double> v) { return std::max(0.0, v[lo] - v[hi]); }};
}

void dykstra_project(Vec& v, std::span<const ConstraintSet> sets, int max_cycles, double tol) {
    const std::size_t n = v.size();
    std::vector<Vec> increments(sets.size(), Vec(n, 0.0));
    Vec before(n);
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        for (std::size_t s = 0; s < sets.size(); ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                v[i] += increments[s][i];
                before[i] = v[i];
            }
            sets[s].project(v);
            for (std::size_t i = 0; i < n; ++i) increments[s][i] = before[i] - v[i];
        }
        double worst = 0.0;
        for (const auto& set : sets) worst = std::max(worst, set.violation(v));
        if (worst <= tol) return;
    }
    // Best effort: run one plain projection cycle so the result is feasible
    // even if Dykstra's corrections have not fully settled.
    for (const auto& set : sets) set.project(v);
}

PgResult pg_maximize(const std::function<double(std::span<const double>)>& objective,
                     const std::function<Vec(std::span<const double>)>& gradient,
                     const std::function<void(Vec&)>& project, Vec x0, const PgOptions& opts) {
    project(x0);
    PgResult res;
    res.x = std::move(x0);
    res.f = objective(res.x);
    if (!std::isfinite(res.f)) throw NumericError("non-finite objective at the initial point");

    const std::size_t n = res.x.size();
    double eta = opts.step0;
    const double eta_cap = opts.step0 * 64.0;
    Vec cand(n);
    for (int it = 0; it < opts.max_iters; ++it) {
        res.iters = it + 1;
        const Vec g = gradient(res.x);
        for (double gi : g)
            if (!std::isfinite(gi)) throw NumericError("non-finite gradient");

        bool accepted = false;
        double step = eta;
        for (int bt = 0; bt < opts.max_backtracks; ++bt) {
            for (std::size_t i = 0; i < n; ++i) cand[i] = res.x[i] + step * g[i];
            project(cand);
            const double fc = objective(cand);
            if (fc > res.f) {
                const double moved = dist_sq(cand, res.x);
                res.x.swap(cand);
                res.f = fc;
                eta = std::min(step * 2.0, eta_cap);
                accepted = true;
                if (moved <= opts.x_tol * opts.x_tol) return res;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no improving step at any scale: converged
    }
    return res;
}

}  // namespace ranksiege::detail

#include "ranksiege/aggregators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace ranksiege {

namespace {

// Connected components of the undirected graph with an edge wherever the
// pair was compared at least once in either direction.
std::vector<std::vector<int>> undirected_components(const ComparisonGraph& g) {
    const int n = g.n;
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            out[id].push_back(u);
            for (int v = 0; v < n; ++v) {
                if (v == u || comp[v] != -1) continue;
                if (g.weight(u, v) + g.weight(v, u) > 0) {
                    comp[v] = id;
                    q.push(v);
                }
            }
        }
    }
    return out;
}

std::string components_summary(const std::vector<std::vector<int>>& comps) {
    std::string s;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        s += k == 0 ? "{" : " {";
        for (std::size_t i = 0; i < comps[k].size(); ++i) {
            if (i) s += ",";
            s += std::to_string(comps[k][i] + 1);  // 1-based in reports
        }
        s += "}";
    }
    return s;
}

bool strongly_connected(const TransitionMatrix& P) {
    const int n = P.n;
    auto reach = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                if (v == u || seen[v]) continue;
                const double w = forward ? P.at(u, v) : P.at(v, u);
                if (w > 0) {
                    seen[v] = 1;
                    ++count;
                    q.push(v);
                }
            }
        }
        return count == n;
    };
    return reach(true) && reach(false);
}

}  // namespace

LaplacianSystem build_laplacian(const ComparisonGraph& graph) {
    const int n = graph.n;
    LaplacianSystem sys;
    sys.n = n;
    sys.laplacian.assign(static_cast<std::size_t>(n) * n, 0.0);
    sys.divergence.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double deg = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double wij = static_cast<double>(graph.weight(i, j));
            const double wji = static_cast<double>(graph.weight(j, i));
            const double tot = wij + wji;
            sys.laplacian[static_cast<std::size_t>(i) * n + j] = -tot;
            deg += tot;
            sys.divergence[i] += wij - wji;
        }
        sys.laplacian[static_cast<std::size_t>(i) * n + i] = deg;
    }
    return sys;
}

PreferenceScores hodgerank(const ComparisonGraph& graph) {
    const int n = graph.n;
    if (n < 2) throw AggregationError("hodgerank needs at least 2 candidates");
    const auto comps = undirected_components(graph);
    if (comps.size() != 1)
        throw AggregationError("comparison graph is disconnected: " + components_summary(comps),
                               comps);

    const LaplacianSystem sys = build_laplacian(graph);
    Eigen::MatrixXd L = Eigen::Map<const Eigen::MatrixXd>(sys.laplacian.data(), n, n);
    Eigen::VectorXd div = Eigen::Map<const Eigen::VectorXd>(sys.divergence.data(), n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
    if (eig.info() != Eigen::Success) throw NumericError("laplacian eigendecomposition failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double cutoff = 1e-10 * ev(n - 1);

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        if (ev(k) <= cutoff) continue;
        const Eigen::VectorXd v = eig.eigenvectors().col(k);
        theta += v * (v.dot(div) / ev(k));
    }
    theta.array() -= theta.mean();  // minimal-norm solution sums to zero

    return PreferenceScores{std::vector<double>(theta.data(), theta.data() + n)};
}

TransitionMatrix build_transition(const ComparisonGraph& graph, int d_override) {
    const int n = graph.n;
    int d_max = 0;
    for (int i = 0; i < n; ++i) {
        int opponents = 0;
        for (int j = 0; j < n; ++j)
            if (j != i && graph.weight(i, j) + graph.weight(j, i) > 0) ++opponents;
        d_max = std::max(d_max, opponents);
    }
    if (d_override > 0) {
        if (d_override < d_max)
            throw InvalidArgumentError("d override below the maximum opponent count");
        d_max = d_override;
    }
    if (d_max == 0) throw AggregationError("no compared pairs: empty comparison graph");

    TransitionMatrix P;
    P.n = n;
    P.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double wij = static_cast<double>(graph.weight(i, j));
            const double wji = static_cast<double>(graph.weight(j, i));
            if (wij + wji == 0.0) continue;
            // Move toward j in proportion to how often j won the pair.
            const double p = wji / (wij + wji) / d_max;
            P.entries[static_cast<std::size_t>(i) * n + j] = p;
            off += p;
        }
        P.entries[static_cast<std::size_t>(i) * n + i] = 1.0 - off;
    }
    return P;
}

PreferenceScores rank_centrality(const ComparisonGraph& graph,
                                 const RankCentralityOptions& opts) {
    const int n = graph.n;
    if (n < 2) throw AggregationError("rank_centrality needs at least 2 candidates");
    const auto comps = undirected_components(graph);
    if (comps.size() != 1)
        throw AggregationError("comparison graph is disconnected: " + components_summary(comps),
                               comps);

    const TransitionMatrix P = build_transition(graph, opts.d_override);
    if (!strongly_connected(P))
        throw AggregationError("comparison chain is reducible; stationary distribution undefined");

    std::vector<double> pi(n, 1.0 / n), next(n, 0.0);
    double residual = 0.0;
    for (long it = 0; it < opts.max_iters; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double pii = pi[i];
            if (pii == 0.0) continue;
            const double* row = &P.entries[static_cast<std::size_t>(i) * n];
            for (int j = 0; j < n; ++j) next[j] += pii * row[j];
        }
        double sum = 0.0;
        for (double v : next) sum += v;
        for (double& v : next) v /= sum;
        residual = 0.0;
        for (int j = 0; j < n; ++j) residual = std::max(residual, std::abs(next[j] - pi[j]));
        // pi is the iterate whose fixed-point residual we just measured.
        if (residual <= opts.tol) return PreferenceScores{std::move(pi)};
        pi.swap(next);
    }
    throw NumericError("rank_centrality power iteration did not converge; residual " +
                           std::to_string(residual),
                       residual);
}

}  // namespace ranksiege

#include "ranksiege/metrics.hpp"

namespace ranksiege {

double reciprocal_rank(const Ranking& target, const Ranking& produced) {
    if (target.size() != produced.size() || target.size() == 0)
        throw InvalidArgumentError("rankings must cover the same nonempty candidate set");
    target.positions();  // permutation checks double as candidate-set checks
    const auto pos = produced.positions();
    const Candidate winner = target.order[0];
    return 1.0 / (pos[winner] + 1);
}

double kendall_tau(const Ranking& target, const Ranking& produced) {
    const int n = target.size();
    if (n != produced.size())
        throw InvalidArgumentError("rankings must cover the same candidate set");
    if (n < 2) throw InvalidArgumentError("kendall tau needs at least 2 candidates");
    const auto pa = target.positions();
    const auto pb = produced.positions();
    long concordant = 0, discordant = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int da = pa[i] - pa[j];
            const int db = pb[i] - pb[j];
            if ((da < 0) == (db < 0))
                ++concordant;
            else
                ++discordant;
        }
    }
    return static_cast<double>(concordant - discordant) / (static_cast<double>(n) * (n - 1) / 2);
}

MetricReport evaluate_rankings(const Ranking& target, const Ranking& produced) {
    return MetricReport{reciprocal_rank(target, produced), kendall_tau(target, produced)};
}

}  // namespace ranksiege

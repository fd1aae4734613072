#include "act/ovb.hpp"

#include <cmath>
#include <stdexcept>

namespace act {

double bag_margin(const BagCenters& centers) {
    const int n = centers.count();
    double cross = 0.0;
    for (int j = 0; j < n; ++j) {
        cross += dot(centers.pos_unit.row(j), centers.neg_unit.row(j));
    }
    const double radicand = 2.0 * n - 2.0 * cross;
    return std::sqrt(std::max(0.0, radicand));
}

double bound_value(std::span<const double> sum_pos, std::span<const double> sum_neg, int n) {
    const double radicand = 2.0 * n - 2.0 * dot(sum_pos, sum_neg);
    return std::sqrt(std::max(0.0, radicand));
}

double greedy_score(const PartialSum& partial, std::span<const double> cand_pos,
                    std::span<const double> cand_neg) {
    // -(P + z+).(N + z-) expanded so each candidate costs two dots against the
    // running sums plus its own cross term.
    const double pn = dot(partial.pos, partial.neg);
    const double pz = dot(partial.pos, cand_neg);
    const double nz = dot(partial.neg, cand_pos);
    const double zz = dot(cand_pos, cand_neg);
    return -(pn + pz + nz + zz);
}

SelectionResult select_templates(const BagCenters& centers, int k) {
    const int n = centers.count();
    if (k < 1 || k > n) {
        throw std::invalid_argument("select_templates: k must be in [1, n]");
    }
    const int dim = centers.dim();

    // Per-candidate cross terms z+_m . z-_m are selection invariants.
    std::vector<double> cross(n);
    for (int m = 0; m < n; ++m) {
        cross[m] = dot(centers.pos_unit.row(m), centers.neg_unit.row(m));
    }

    PartialSum partial(dim);
    std::vector<bool> taken(n, false);
    SelectionResult result;
    result.indices.reserve(k);

    for (int step = 0; step < k; ++step) {
        const double pn = dot(partial.pos, partial.neg);
        int best = -1;
        double best_score = 0.0;
        for (int m = 0; m < n; ++m) {
            if (taken[m]) continue;
            const double score = -(pn + dot(partial.pos, centers.neg_unit.row(m)) +
                                   dot(partial.neg, centers.pos_unit.row(m)) + cross[m]);
            if (best < 0 || score > best_score) {
                best = m;
                best_score = score;
            }
        }
        taken[best] = true;
        result.indices.push_back(best);
        const auto zp = centers.pos_unit.row(best);
        const auto zn = centers.neg_unit.row(best);
        for (int d = 0; d < dim; ++d) {
            partial.pos[d] += zp[d];
            partial.neg[d] += zn[d];
        }
    }
    result.objective = bound_value(partial.pos, partial.neg, n);
    return result;
}

}  // namespace act

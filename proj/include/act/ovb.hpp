#pragma once

#include <span>
#include <vector>

#include "act/features.hpp"

namespace act {

// Greedy per-bag selection state: running sums of the selected unit centers.
struct PartialSum {
    std::vector<double> pos;
    std::vector<double> neg;

    explicit PartialSum(int dim) : pos(dim, 0.0), neg(dim, 0.0) {}
};

struct SelectionResult {
    std::vector<int> indices;  // ordered, distinct, one per selection step
    double objective = 0.0;    // bound value of the final partial sum
};

// Class separation of a whole bag: sqrt(max(0, 2n - 2 sum_j pos_j . neg_j))
// over the n unit center pairs.
double bag_margin(const BagCenters& centers);

// Bound value of a candidate selection with partial sums (P, N):
// sqrt(max(0, 2n - 2 P.N)). Reported for diagnostics; ranking uses
// greedy_score below.
double bound_value(std::span<const double> sum_pos, std::span<const double> sum_neg, int n);

// Score used to rank candidates at one greedy step: -(P + z+)^T (N + z-).
// The bound sqrt(2n - 2x) is strictly decreasing in x at fixed step size, so
// maximizing this surrogate picks the same template while staying defined
// when the radicand would go negative.
double greedy_score(const PartialSum& partial, std::span<const double> cand_pos,
                    std::span<const double> cand_neg);

// Picks k distinct templates for one bag, greedily, ties to the lowest index.
SelectionResult select_templates(const BagCenters& centers, int k);

}  // namespace act

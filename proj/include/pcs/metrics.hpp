#pragma once

#include <optional>
#include <vector>

#include "pcs/graph.hpp"
#include "pcs/query.hpp"

namespace pcs {

// Unit-cost tree edit distance between two induced rooted subtrees of one
// GP-tree; reduces to the symmetric-difference size of the node sets.
int tree_edit_distance(const PTree& a, const PTree& b);

// Community pairwise similarity: 1 minus the mean over communities of the
// average normalized TED over member pairs. In [0, 1].
double cps(const ResultSet& result, const ProfiledGraph& g);

// Level-diversity ratio of `other` against `pcs_result`: per P-tree level, the
// ratio of unique mct labels summed over communities; averaged over levels of
// T(q) with a nonzero denominator.
double ldr(VertexId q, const ResultSet& other, const ResultSet& pcs_result,
           const ProfiledGraph& g);

// Community P-tree frequency: mean over communities and T(q) nodes of the
// fraction of members carrying the node. In [0, 1].
double cpf(VertexId q, const ResultSet& result, const ProfiledGraph& g);

// Mean over found communities of the best F1 vertex overlap with any truth
// circle.
double f1_score(const ResultSet& found, const std::vector<std::vector<VertexId>>& truth);

struct MetricReport {
    double cps = 0.0;
    double cpf = 0.0;
    std::optional<double> ldr;  // needs a comparison result set
    std::optional<double> f1;   // needs ground-truth circles

    std::vector<double> cps_per_community;
    std::vector<double> cpf_per_community;
    std::vector<double> f1_best_per_found;
    std::vector<double> f1_best_per_truth;
    std::optional<double> f1_truth_to_found;
};

MetricReport compute_metrics(VertexId q, const ResultSet& result, const ProfiledGraph& g,
                             const ResultSet* other,
                             const std::vector<std::vector<VertexId>>* truth);

}  // namespace pcs

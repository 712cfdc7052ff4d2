#include "pcs/metrics.hpp"

#include <algorithm>

#include "pcs/subtree.hpp"

namespace pcs {

int tree_edit_distance(const PTree& a, const PTree& b) {
    // |a \ b| + |b \ a|; inserts and deletes cost one each and no relabeling
    // can occur between induced subtrees of one taxonomy.
    std::size_t common = tree_intersection(a, b).size();
    return static_cast<int>(a.size() + b.size() - 2 * common);
}

namespace {

double community_cps(const Community& c, const ProfiledGraph& g) {
    const auto& vs = c.vertices;
    if (vs.empty()) return 0.0;
    double sum = 0.0;
    for (VertexId i : vs) {
        for (VertexId j : vs) {
            const PTree& ti = g.ptrees[i];
            const PTree& tj = g.ptrees[j];
            std::size_t uni = tree_union(ti, tj).size();
            if (uni == 0) continue;  // two empty P-trees: distance 0
            sum += static_cast<double>(tree_edit_distance(ti, tj)) / static_cast<double>(uni);
        }
    }
    return sum / (static_cast<double>(vs.size()) * static_cast<double>(vs.size()));
}

double community_cpf(const Community& c, const PTree& tq, const ProfiledGraph& g) {
    if (c.vertices.empty() || tq.empty()) return 0.0;
    double sum = 0.0;
    for (LabelId node : tq.nodes) {
        int fre = 0;
        for (VertexId v : c.vertices)
            if (g.ptrees[v].contains(node)) ++fre;
        sum += static_cast<double>(fre) / static_cast<double>(c.vertices.size());
    }
    return sum / static_cast<double>(tq.size());
}

double best_f1(const std::vector<VertexId>& found, const std::vector<VertexId>& truth) {
    if (found.empty() || truth.empty()) return 0.0;
    std::size_t overlap = 0;
    std::size_t i = 0, j = 0;
    while (i < found.size() && j < truth.size()) {
        if (found[i] < truth[j])
            ++i;
        else if (found[i] > truth[j])
            ++j;
        else {
            ++overlap;
            ++i;
            ++j;
        }
    }
    if (overlap == 0) return 0.0;
    return 2.0 * static_cast<double>(overlap) /
           static_cast<double>(found.size() + truth.size());
}

}  // namespace

double cps(const ResultSet& result, const ProfiledGraph& g) {
    if (result.communities.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& c : result.communities) sum += community_cps(c, g);
    return 1.0 - sum / static_cast<double>(result.communities.size());
}

double ldr(VertexId q, const ResultSet& other, const ResultSet& pcs_result,
           const ProfiledGraph& g) {
    const PTree& tq = g.ptrees[q];
    int levels = 0;
    for (LabelId l : tq.nodes) levels = std::max(levels, g.gptree.depth(l));

    double total = 0.0;
    int counted = 0;
    for (int level = 1; level <= levels; ++level) {
        auto count_at = [&](const ResultSet& rs) {
            std::size_t sum = 0;
            for (const auto& c : rs.communities)
                for (LabelId l : c.mct.nodes)
                    if (g.gptree.depth(l) == level) ++sum;
            return sum;
        };
        std::size_t denom = count_at(pcs_result);
        if (denom == 0) continue;  // level not reached by any theme
        std::size_t num = count_at(other);
        total += static_cast<double>(num) / static_cast<double>(denom);
        ++counted;
    }
    if (counted == 0) return 1.0;
    return total / counted;
}

double cpf(VertexId q, const ResultSet& result, const ProfiledGraph& g) {
    if (result.communities.empty()) return 0.0;
    const PTree& tq = g.ptrees[q];
    if (tq.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& c : result.communities) sum += community_cpf(c, tq, g);
    return sum / static_cast<double>(result.communities.size());
}

double f1_score(const ResultSet& found, const std::vector<std::vector<VertexId>>& truth) {
    if (found.communities.empty() || truth.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& c : found.communities) {
        double best = 0.0;
        for (const auto& circle : truth) best = std::max(best, best_f1(c.vertices, circle));
        sum += best;
    }
    return sum / static_cast<double>(found.communities.size());
}

MetricReport compute_metrics(VertexId q, const ResultSet& result, const ProfiledGraph& g,
                             const ResultSet* other,
                             const std::vector<std::vector<VertexId>>* truth) {
    MetricReport r;
    r.cps = cps(result, g);
    r.cpf = cpf(q, result, g);
    for (const auto& c : result.communities) {
        r.cps_per_community.push_back(1.0 - community_cps(c, g));
        r.cpf_per_community.push_back(community_cpf(c, g.ptrees[q], g));
    }
    if (other) r.ldr = ldr(q, *other, result, g);
    if (truth) {
        r.f1 = f1_score(result, *truth);
        for (const auto& c : result.communities) {
            double best = 0.0;
            for (const auto& circle : *truth) best = std::max(best, best_f1(c.vertices, circle));
            r.f1_best_per_found.push_back(best);
        }
        double sum = 0.0;
        for (const auto& circle : *truth) {
            double best = 0.0;
            for (const auto& c : result.communities)
                best = std::max(best, best_f1(c.vertices, circle));
            r.f1_best_per_truth.push_back(best);
            sum += best;
        }
        r.f1_truth_to_found =
            truth->empty() ? 0.0 : sum / static_cast<double>(truth->size());
    }
    return r;
}

}  // namespace pcs

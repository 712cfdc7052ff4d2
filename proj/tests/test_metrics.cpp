#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pcs/metrics.hpp"
#include "pcs/query.hpp"

using namespace pcs;
using namespace pcs::test;

namespace {

ResultSet one_community(std::vector<VertexId> vs, PTree mct) {
    ResultSet rs;
    rs.communities.push_back({std::move(vs), std::move(mct)});
    return rs;
}

// Straight transcription of the pairwise-similarity formula, kept separate
// from the library implementation on purpose.
double cps_reference(const ResultSet& rs, const ProfiledGraph& g) {
    double outer = 0.0;
    for (const auto& c : rs.communities) {
        double inner = 0.0;
        for (VertexId i : c.vertices)
            for (VertexId j : c.vertices) {
                auto uni = tree_union(g.ptrees[i], g.ptrees[j]).size();
                if (uni == 0) continue;
                auto inter = tree_intersection(g.ptrees[i], g.ptrees[j]).size();
                double ted = static_cast<double>(g.ptrees[i].size() + g.ptrees[j].size() -
                                                 2 * inter);
                inner += ted / static_cast<double>(uni);
            }
        outer += inner / (static_cast<double>(c.vertices.size()) *
                          static_cast<double>(c.vertices.size()));
    }
    return 1.0 - outer / static_cast<double>(rs.communities.size());
}

}  // namespace

TEST_CASE("tree_edit_distance") {
    CHECK(tree_edit_distance(tree({R, CM, ML}), tree({R, CM, ML})) == 0);
    CHECK(tree_edit_distance(tree({R}), tree({R, CM})) == 1);
    CHECK(tree_edit_distance(tree({R, CM, ML}), tree({R, IS})) == 3);
    CHECK(tree_edit_distance(PTree{}, PTree{}) == 0);

    SUBCASE("metric axioms on random subtree pairs") {
        std::mt19937_64 rng(201);
        for (int it = 0; it < 500; ++it) {
            GPTree gp = random_gptree(10, 4, rng);
            auto pick = [&]() {
                std::vector<LabelId> s;
                for (LabelId l = 0; l < gp.size(); ++l)
                    if (rng() % 2) s.push_back(l);
                return close_under_parents(s, gp);
            };
            PTree a = pick(), b = pick(), c = pick();
            CHECK(tree_edit_distance(a, b) == tree_edit_distance(b, a));
            CHECK((tree_edit_distance(a, b) == 0) == (a == b));
            CHECK(tree_edit_distance(a, c) <=
                  tree_edit_distance(a, b) + tree_edit_distance(b, c));
        }
    }
}

TEST_CASE("cps") {
    auto g = fig2_fixture();
    SUBCASE("identical member P-trees give 1.0") {
        auto rs = one_community({B, C}, tree({R, CM, ML, AI}));
        CHECK(cps(rs, g) == doctest::Approx(1.0));
    }
    SUBCASE("two members sharing only the root") {
        // |T(A)| = 4, |T(B)| = 4, shared = {r}: TED = 6, union = 7.
        auto rs = one_community({A, B}, tree({R}));
        double expected = 1.0 - (2.0 * 6.0 / 7.0) / 4.0;
        CHECK(cps(rs, g) == doctest::Approx(expected));
    }
    SUBCASE("fixture community matches the reference transcription") {
        auto rs = one_community({B, C, D}, tree({R, CM, ML, AI}));
        CHECK(cps(rs, g) == doctest::Approx(cps_reference(rs, g)));
        auto both = query_oracle(g, D, 2);
        CHECK(cps(both, g) == doctest::Approx(cps_reference(both, g)));
    }
}

TEST_CASE("ldr") {
    auto g = fig2_fixture();
    auto pcs_rs = query_oracle(g, D, 2);
    SUBCASE("self comparison is exactly 1") {
        CHECK(ldr(D, pcs_rs, pcs_rs, g) == 1.0);
    }
    SUBCASE("root-only competitor scores below 1") {
        auto other = one_community({A, B, C, D, E}, tree({R}));
        CHECK(ldr(D, other, pcs_rs, g) < 1.0);
    }
    SUBCASE("levels with zero denominator are skipped") {
        // PCS result with a depth-1 theme only: levels 2 and 3 are skipped,
        // level 1 compares 1/1.
        auto shallow = one_community({A, B, C, D, E}, tree({R}));
        auto other = one_community({A, B, C, D, E}, tree({R}));
        CHECK(ldr(D, other, shallow, g) == doctest::Approx(1.0));
        // A deeper`other` cannot blow up on the skipped level either.
        auto deep = one_community({A, D, E}, tree({R, IS, DMS}));
        CHECK(std::isfinite(ldr(D, deep, shallow, g)));
    }
}

TEST_CASE("cpf") {
    auto g = fig2_fixture();
    SUBCASE("all members contain T(q)") {
        auto rs = one_community({A, D, E}, tree({R, IS, DMS, HW}));
        CHECK(cpf(A, rs, g) == doctest::Approx(1.0));  // T(A) = {r, IS, DMS, HW}
    }
    SUBCASE("half coverage on a synthetic pair") {
        GPTree gp = GPTree::from_parents({-1, 0}, {"r", "a"});
        std::vector<PTree> pt = {close_under_parents({1}, gp), close_under_parents({}, gp)};
        pt[1] = close_under_parents({0}, gp);  // only the root
        auto g2 = make_profiled_graph(2, {{0, 1}}, pt, gp);
        // T(q=0) = {r, a}; member 1 carries r but not a: coverage (2 + 1)/2/2
        auto rs = one_community({0, 1}, tree({0}));
        CHECK(cpf(0, rs, g2) == doctest::Approx((1.0 + 0.5) / 2.0));
    }
    SUBCASE("fixture result matches brute force") {
        auto rs = query_oracle(g, D, 2);
        double brute = 0.0;
        for (const auto& c : rs.communities) {
            double per = 0.0;
            for (LabelId node : g.ptrees[D].nodes) {
                int cnt = 0;
                for (VertexId v : c.vertices)
                    if (g.ptrees[v].contains(node)) ++cnt;
                per += static_cast<double>(cnt) / static_cast<double>(c.vertices.size());
            }
            brute += per / static_cast<double>(g.ptrees[D].size());
        }
        brute /= static_cast<double>(rs.communities.size());
        CHECK(cpf(D, rs, g) == doctest::Approx(brute));
    }
}

TEST_CASE("f1") {
    SUBCASE("exact match scores 1") {
        auto found = one_community({1, 2, 3}, PTree{});
        CHECK(f1_score(found, {{1, 2, 3}}) == doctest::Approx(1.0));
    }
    SUBCASE("disjoint community contributes 0") {
        auto found = one_community({1, 2}, PTree{});
        CHECK(f1_score(found, {{5, 6}}) == doctest::Approx(0.0));
    }
    SUBCASE("union of two equal disjoint circles scores two thirds") {
        auto found = one_community({1, 2, 3, 4}, PTree{});
        CHECK(f1_score(found, {{1, 2}, {3, 4}}) == doctest::Approx(2.0 / 3.0));
    }
}

TEST_CASE("metric ranges on random result sets") {
    std::mt19937_64 rng(211);
    for (int it = 0; it < 300; ++it) {
        auto cs = small_case(rng());
        const auto& g = cs.graph;
        ResultSet rs;
        std::uniform_int_distribution<VertexId> vpick(0, g.n - 1);
        VertexId q = vpick(rng);
        int ncomm = 1 + static_cast<int>(rng() % 3);
        for (int c = 0; c < ncomm; ++c) {
            std::vector<VertexId> vs = {q};
            for (int j = 0; j < 5; ++j) vs.push_back(vpick(rng));
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            std::vector<PTree> trees;
            for (VertexId v : vs) trees.push_back(g.ptrees[v]);
            rs.communities.push_back({vs, maximal_common_subtree(trees)});
        }
        double c = cps(rs, g);
        double p = cpf(q, rs, g);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(ldr(q, rs, rs, g) == 1.0);
        double f = f1_score(rs, {{0, 1, 2}});
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("cps invariant under vertex relabeling; cpf under community order") {
    auto g = fig2_fixture();
    auto rs = query_oracle(g, D, 2);
    ResultSet reversed;
    reversed.communities = {rs.communities[1], rs.communities[0]};
    CHECK(cpf(D, rs, g) == doctest::Approx(cpf(D, reversed, g)));
    CHECK(cps(rs, g) == doctest::Approx(cps(reversed, g)));

    // Relabel vertices by a permutation and remap the communities to match.
    std::vector<VertexId> perm = {4, 2, 0, 5, 1, 3};
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (u < v) edges.push_back({perm[u], perm[v]});
    std::vector<PTree> ptrees(g.n);
    for (VertexId v = 0; v < g.n; ++v) ptrees[perm[v]] = g.ptrees[v];
    auto relabeled = make_profiled_graph(g.n, edges, ptrees, g.gptree);
    ResultSet mapped;
    for (const auto& c : rs.communities) {
        Community mc;
        mc.mct = c.mct;
        for (VertexId v : c.vertices) mc.vertices.push_back(perm[v]);
        std::sort(mc.vertices.begin(), mc.vertices.end());
        mapped.communities.push_back(std::move(mc));
    }
    CHECK(cps(mapped, relabeled) == doctest::Approx(cps(rs, g)));
}

TEST_CASE("compute_metrics assembles the report") {
    auto g = fig2_fixture();
    auto rs = query_oracle(g, D, 2);
    std::vector<std::vector<VertexId>> truth = {{B, C, D}, {A, D, E}};
    auto rep = compute_metrics(D, rs, g, &rs, &truth);
    CHECK(rep.cps == doctest::Approx(cps(rs, g)));
    CHECK(rep.cpf == doctest::Approx(cpf(D, rs, g)));
    REQUIRE(rep.ldr);
    CHECK(*rep.ldr == doctest::Approx(1.0));
    REQUIRE(rep.f1);
    CHECK(*rep.f1 == doctest::Approx(1.0));
    CHECK(rep.cps_per_community.size() == 2);
    CHECK(rep.f1_best_per_found.size() == 2);
}

#include <doctest.h>

#include <cstdlib>
#include <memory>
#include <thread>

#include "helpers.hpp"
#include "pcs/query.hpp"

using namespace pcs;
using namespace pcs::test;

namespace {

std::shared_ptr<const ProfiledGraph> shared_fixture() {
    return std::make_shared<const ProfiledGraph>(fig2_fixture());
}

bool same_answers(const ResultSet& a, const ResultSet& b) {
    return a.communities == b.communities;
}

std::vector<ResultSet> run_all(const ProfiledGraph& g, const CPTreeIndex& idx, VertexId q,
                               int k) {
    return {query_basic(g, q, k),
            query_incre(idx, q, k),
            query_advanced(idx, q, k, CutStrategy::I),
            query_advanced(idx, q, k, CutStrategy::D),
            query_advanced(idx, q, k, CutStrategy::P)};
}

}  // namespace

TEST_CASE("fixture query (D, k=2) finds both communities with every algorithm") {
    auto g = shared_fixture();
    auto idx = CPTreeIndex::build(g);
    auto expected_oracle = query_oracle(*g, D, 2);
    REQUIRE(expected_oracle.communities.size() == 2);
    CHECK(expected_oracle.communities[0].vertices == std::vector<VertexId>{B, C, D});
    CHECK(expected_oracle.communities[0].mct == tree({R, CM, ML, AI}));
    CHECK(expected_oracle.communities[1].vertices == std::vector<VertexId>{A, D, E});
    CHECK(expected_oracle.communities[1].mct == tree({R, IS, DMS, HW}));
    for (const auto& rs : run_all(*g, idx, D, 2)) CHECK(same_answers(rs, expected_oracle));
}

TEST_CASE("fixture: no 4-core means no community") {
    auto g = shared_fixture();
    auto idx = CPTreeIndex::build(g);
    for (const auto& rs : run_all(*g, idx, D, 4)) CHECK(rs.communities.empty());
    CHECK(query_oracle(*g, D, 4).communities.empty());
}

TEST_CASE("degenerate queries") {
    SUBCASE("empty P-tree at k=0 returns the component with an empty theme") {
        GPTree gp = GPTree::from_parents({-1, 0}, {"r", "a"});
        std::vector<PTree> ptrees(4);
        ptrees[3] = close_under_parents({1}, gp);  // someone else has labels
        auto g = std::make_shared<const ProfiledGraph>(
            make_profiled_graph(4, {{0, 1}, {1, 2}}, ptrees, gp));
        auto idx = CPTreeIndex::build(g);
        for (const auto& rs : run_all(*g, idx, 0, 0)) {
            REQUIRE(rs.communities.size() == 1);
            CHECK(rs.communities[0].vertices == std::vector<VertexId>{0, 1, 2});
            CHECK(rs.communities[0].mct.empty());
        }
    }
    SUBCASE("isolated vertex at k=0 is its own community with its own theme") {
        GPTree gp = GPTree::from_parents({-1, 0}, {"r", "a"});
        std::vector<PTree> ptrees = {close_under_parents({1}, gp), PTree{}};
        auto g = std::make_shared<const ProfiledGraph>(
            make_profiled_graph(2, {}, ptrees, gp));
        auto idx = CPTreeIndex::build(g);
        for (const auto& rs : run_all(*g, idx, 0, 0)) {
            REQUIRE(rs.communities.size() == 1);
            CHECK(rs.communities[0].vertices == std::vector<VertexId>{0});
            CHECK(rs.communities[0].mct == tree({0, 1}));
        }
    }
}

TEST_CASE("all algorithms equal the oracle on random instances") {
    std::mt19937_64 rng(101);
    int instances = 0;
    for (int it = 0; it < 25; ++it) {
        auto cs = small_case(rng());
        auto g = std::make_shared<const ProfiledGraph>(cs.graph);
        auto idx = CPTreeIndex::build(g);
        std::uniform_int_distribution<VertexId> vpick(0, g->n - 1);
        for (int qi = 0; qi < 4; ++qi) {
            VertexId q = vpick(rng);
            int k = static_cast<int>(rng() % 5);
            auto expected = query_oracle(*g, q, k);
            for (const auto& rs : run_all(*g, idx, q, k)) {
                bool ok = same_answers(rs, expected);
                CHECK(ok);
                if (!ok) {
                    MESSAGE("seed=", cs.seed, " q=", q, " k=", k);
                }
            }
            ++instances;
        }
    }
    CHECK(instances == 100);
}

TEST_CASE("query results satisfy the four community properties") {
    std::mt19937_64 rng(103);
    for (int it = 0; it < 15; ++it) {
        auto cs = small_case(rng());
        auto g = std::make_shared<const ProfiledGraph>(cs.graph);
        auto idx = CPTreeIndex::build(g);
        std::uniform_int_distribution<VertexId> vpick(0, g->n - 1);
        VertexId q = vpick(rng);
        int k = static_cast<int>(rng() % 4);
        auto rs = query_advanced(idx, q, k, CutStrategy::P);
        for (const auto& c : rs.communities) {
            const auto& s = c.vertices;
            // connectivity + membership
            CHECK(std::binary_search(s.begin(), s.end(), q));
            std::vector<char> seen(g->n, 0);
            std::vector<VertexId> stack = {q};
            seen[q] = 1;
            std::size_t reached = 0;
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                ++reached;
                for (VertexId u : g->adj[v])
                    if (!seen[u] && std::binary_search(s.begin(), s.end(), u)) {
                        seen[u] = 1;
                        stack.push_back(u);
                    }
            }
            CHECK(reached == s.size());
            // structure cohesiveness
            for (VertexId v : s) {
                int internal = 0;
                for (VertexId u : g->adj[v])
                    if (std::binary_search(s.begin(), s.end(), u)) ++internal;
                CHECK(internal >= k);
            }
            // theme is the exact common subtree and the set is maximal for it
            std::vector<PTree> member_trees;
            for (VertexId v : s) member_trees.push_back(g->ptrees[v]);
            CHECK(maximal_common_subtree(member_trees) == c.mct);
            CHECK(gkt_direct(*g, q, k, c.mct) == s);
        }
        // profile cohesiveness between reported communities
        for (const auto& a : rs.communities)
            for (const auto& b : rs.communities)
                if (!(a.mct == b.mct)) CHECK_FALSE(is_subtree(a.mct, b.mct));
    }
}

TEST_CASE("pruned subtrees are genuinely infeasible") {
    std::mt19937_64 rng(107);
    for (int it = 0; it < 10; ++it) {
        auto cs = small_case(rng());
        const auto& g = cs.graph;
        std::uniform_int_distribution<VertexId> vpick(0, g.n - 1);
        VertexId q = vpick(rng);
        int k = 1 + static_cast<int>(rng() % 3);
        QueryTrace trace;
        query_basic(g, q, k, &trace);
        // Everything enumerable but never generated was pruned below an
        // infeasible ancestor; sample and verify directly.
        std::unordered_map<PTree, char, PTreeHash> generated;
        for (auto& t : trace.generated) generated[t] = 1;
        std::vector<PTree> frontier = {PTree{}};
        std::vector<PTree> skipped;
        std::size_t i = 0;
        while (i < frontier.size()) {
            for (auto& t : generate_subtrees(frontier[i], g.ptrees[q], g.gptree)) {
                if (generated.count(t))
                    frontier.push_back(t);
                else
                    skipped.push_back(t);
            }
            ++i;
        }
        int checked = 0;
        for (const auto& t : skipped) {
            if (checked >= 25) break;
            CHECK(gkt_direct(g, q, k, t).empty());
            ++checked;
        }
    }
}

TEST_CASE("counters") {
    auto g = shared_fixture();
    auto idx = CPTreeIndex::build(g);
    auto basic = query_basic(*g, D, 2);
    auto incre = query_incre(idx, D, 2);
    auto advp = query_advanced(idx, D, 2, CutStrategy::P);
    auto advi = query_advanced(idx, D, 2, CutStrategy::I);

    SUBCASE("ordering") {
        CHECK(advp.counters.subtrees_verified <= incre.counters.subtrees_verified);
        CHECK(incre.counters.subtrees_verified <= basic.counters.subtrees_generated);
        CHECK(advp.counters.subtrees_verified <= advi.counters.subtrees_verified);
    }
    SUBCASE("incre peels strictly smaller candidate sets than basic") {
        CHECK(incre.counters.gkt_candidate_vertices <
              basic.counters.gkt_candidate_vertices);
    }
    SUBCASE("determinism") {
        auto again = query_advanced(idx, D, 2, CutStrategy::P);
        CHECK(again.counters.subtrees_verified == advp.counters.subtrees_verified);
        CHECK(again.counters.subtrees_generated == advp.counters.subtrees_generated);
    }
}

TEST_CASE("cut finders produce valid cuts") {
    auto check_cut = [](const CPTreeIndex& idx, VertexId q, int k,
                        const std::optional<Cut>& cut, const PTree& tq) {
        REQUIRE(cut.has_value());
        const ProfiledGraph& g = *idx.graph();
        if (cut->infeasible.empty()) {
            CHECK(cut->feasible == tq);
            CHECK_FALSE(gkt_direct(g, q, k, tq).empty());
        } else {
            CHECK_FALSE(gkt_direct(g, q, k, cut->feasible).empty());
            CHECK(gkt_direct(g, q, k, cut->infeasible).empty());
            CHECK(cut->infeasible.size() == cut->feasible.size() + 1);
            CHECK(is_subtree(cut->feasible, cut->infeasible));
        }
    };

    SUBCASE("fixture (D, 2): proper border cuts") {
        auto g = shared_fixture();
        auto idx = CPTreeIndex::build(g);
        FeasibilityCache cache;
        QueryCounters counters;
        check_cut(idx, D, 2, find_i(idx, D, 2, cache, counters), g->ptrees[D]);
        FeasibilityCache cache2;
        check_cut(idx, D, 2, find_d(idx, D, 2, cache2, counters), g->ptrees[D]);
        FeasibilityCache cache3;
        check_cut(idx, D, 2, find_p(idx, D, 2, cache3, counters), g->ptrees[D]);
    }
    SUBCASE("fully feasible P-tree gives the degenerate cut") {
        auto g = shared_fixture();
        auto idx = CPTreeIndex::build(g);
        // T(A) = {r, IS, DMS, HW} is feasible at k=2 ({A, D, E})
        FeasibilityCache cache;
        QueryCounters counters;
        for (auto finder : {find_i, find_d, find_p}) {
            FeasibilityCache c;
            auto cut = finder(idx, A, 2, c, counters);
            REQUIRE(cut.has_value());
            CHECK(cut->infeasible.empty());
            CHECK(cut->feasible == g->ptrees[A]);
        }
        (void)cache;
    }
    SUBCASE("k beyond the max core yields no cut and empty results") {
        auto g = shared_fixture();
        auto idx = CPTreeIndex::build(g);
        QueryCounters counters;
        for (auto finder : {find_i, find_d, find_p}) {
            FeasibilityCache c;
            CHECK_FALSE(finder(idx, D, 9, c, counters).has_value());
        }
        for (auto strat : {CutStrategy::I, CutStrategy::D, CutStrategy::P})
            CHECK(query_advanced(idx, D, 9, strat).communities.empty());
    }
    SUBCASE("random instances") {
        std::mt19937_64 rng(109);
        for (int it = 0; it < 15; ++it) {
            auto cs = small_case(rng());
            auto g = std::make_shared<const ProfiledGraph>(cs.graph);
            auto idx = CPTreeIndex::build(g);
            std::uniform_int_distribution<VertexId> vpick(0, g->n - 1);
            VertexId q = vpick(rng);
            int k = static_cast<int>(rng() % 4);
            bool any_feasible = !gkt_direct(*g, q, k, PTree{}).empty();
            QueryCounters counters;
            for (auto finder : {find_i, find_d, find_p}) {
                FeasibilityCache c;
                auto cut = finder(idx, q, k, c, counters);
                if (!any_feasible) {
                    CHECK_FALSE(cut.has_value());
                    continue;
                }
                REQUIRE(cut.has_value());
                if (cut->infeasible.empty()) {
                    CHECK_FALSE(gkt_direct(*g, q, k, cut->feasible).empty());
                } else {
                    CHECK_FALSE(gkt_direct(*g, q, k, cut->feasible).empty());
                    CHECK(gkt_direct(*g, q, k, cut->infeasible).empty());
                    CHECK(is_subtree(cut->feasible, cut->infeasible));
                    CHECK(cut->infeasible.size() == cut->feasible.size() + 1);
                }
            }
        }
    }
}

TEST_CASE("expand_ptree from a degenerate cut") {
    auto g = shared_fixture();
    auto idx = CPTreeIndex::build(g);
    FeasibilityCache cache;
    QueryCounters counters;
    Cut cut{PTree{}, g->ptrees[A]};
    auto rs = expand_ptree(idx, A, 2, cut, cache, counters);
    REQUIRE(rs.communities.size() == 1);
    CHECK(rs.communities[0].vertices == std::vector<VertexId>{A, D, E});
    CHECK(rs.communities[0].mct == tree({R, IS, DMS, HW}));
}

TEST_CASE("expand_ptree from any finder's cut reproduces the oracle") {
    auto g = shared_fixture();
    auto idx = CPTreeIndex::build(g);
    auto expected = query_oracle(*g, D, 2);
    for (auto finder : {find_i, find_d, find_p}) {
        FeasibilityCache cache;
        QueryCounters counters;
        auto cut = finder(idx, D, 2, cache, counters);
        REQUIRE(cut.has_value());
        auto rs = expand_ptree(idx, D, 2, *cut, cache, counters);
        CHECK(same_answers(rs, expected));
    }
}

TEST_CASE("normalize") {
    auto g = fig2_fixture();
    SUBCASE("equal member sets with nested trees merge into one community") {
        std::vector<std::pair<std::vector<VertexId>, PTree>> raw = {
            {{B, C, D}, tree({R, CM})},
            {{B, C, D}, tree({R, CM, ML})},
        };
        auto rs = normalize(std::move(raw), g, {});
        REQUIRE(rs.communities.size() == 1);
        CHECK(rs.communities[0].mct == tree({R, CM, ML, AI}));  // recomputed from members
        CHECK(rs.communities[0].vertices == std::vector<VertexId>{B, C, D});
    }
    SUBCASE("strictly contained themes are dropped") {
        std::vector<std::pair<std::vector<VertexId>, PTree>> raw = {
            {{A, B, C, D, E}, tree({R})},
            {{B, C, D}, tree({R, CM, ML, AI})},
            {{A, D, E}, tree({R, IS, DMS, HW})},
        };
        auto rs = normalize(std::move(raw), g, {});
        CHECK(rs.communities.size() == 2);
    }
    SUBCASE("recomputed theme replaces the recorded subtree") {
        // Members all share IS/DMS/HW even though only {r, IS} was recorded.
        std::vector<std::pair<std::vector<VertexId>, PTree>> raw = {
            {{A, D, E}, tree({R, IS})},
        };
        auto rs = normalize(std::move(raw), g, {});
        REQUIRE(rs.communities.size() == 1);
        CHECK(rs.communities[0].mct == tree({R, IS, DMS, HW}));
    }
}

TEST_CASE("incre via restored P-tree matches basic exactly") {
    std::mt19937_64 rng(113);
    for (int it = 0; it < 10; ++it) {
        auto cs = small_case(rng());
        auto g = std::make_shared<const ProfiledGraph>(cs.graph);
        auto idx = CPTreeIndex::build(g);
        VertexId q = static_cast<VertexId>(rng() % g->n);
        int k = static_cast<int>(rng() % 4);
        CHECK(same_answers(query_incre(idx, q, k), query_basic(*g, q, k)));
    }
}

TEST_CASE("oracle bound") {
    auto g = fig2_fixture();
    CHECK_THROWS_AS(query_oracle(g, D, 2, 3), DataError);
    CHECK(oracle_subtree_bound() == 65536);  // default without the env override
    setenv("PCS_ORACLE_BOUND", "1024", 1);
    CHECK(oracle_subtree_bound() == 1024);
    setenv("PCS_ORACLE_BOUND", "junk", 1);
    CHECK(oracle_subtree_bound() == 65536);
    unsetenv("PCS_ORACLE_BOUND");
}

TEST_CASE("concurrent queries over one shared graph and index") {
    auto g = std::make_shared<const ProfiledGraph>(small_case(997).graph);
    auto idx = CPTreeIndex::build(g);
    std::vector<ResultSet> expected;
    for (VertexId q = 0; q < g->n; ++q) expected.push_back(query_oracle(*g, q, 2));

    std::vector<std::thread> workers;
    std::vector<int> mismatches(4, 0);
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w]() {
            for (int rep = 0; rep < 5; ++rep) {
                for (VertexId q = 0; q < g->n; ++q) {
                    auto a = query_advanced(idx, q, 2, CutStrategy::P);
                    auto b = query_incre(idx, q, 2);
                    if (a.communities != expected[q].communities) mismatches[w]++;
                    if (b.communities != expected[q].communities) mismatches[w]++;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    for (int w = 0; w < 4; ++w) CHECK(mismatches[w] == 0);
}

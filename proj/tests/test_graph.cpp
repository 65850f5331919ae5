#include "doctest.h"

#include <set>

#include "graph_suite.hpp"
#include "mgs/error.hpp"
#include "mgs/graph.hpp"

using namespace mgs;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an mgs::Error");
    return ErrorKind::InvalidParams;
}

EdgeList complete_edges(NodeId n) {
    EdgeList e;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return e;
}

} // namespace

TEST_CASE("make_graph basics") {
    Graph p2 = make_graph(2, EdgeList{{0, 1}});
    CHECK(p2.size() == 2);
    CHECK(p2.max_degree() == 1);
    CHECK(p2.min_degree() == 1);

    Graph k4 = make_graph(4, complete_edges(4));
    CHECK(k4.edge_count() == 6);
    CHECK(k4.max_degree() == 3);
    CHECK(k4.min_degree() == 3);
    CHECK(k4.has_edge(2, 0));
    CHECK_FALSE(p2.has_edge(0, 0));
}

TEST_CASE("make_graph errors") {
    CHECK(kind_of([] { make_graph(4, EdgeList{{0, 1}, {2, 3}}); }) == ErrorKind::DisconnectedGraph);
    CHECK(kind_of([] { make_graph(3, EdgeList{{0, 3}}); }) == ErrorKind::InvalidEdge);
    CHECK(kind_of([] { make_graph(3, EdgeList{{1, 1}, {0, 1}, {1, 2}}); }) == ErrorKind::InvalidEdge);
    CHECK(kind_of([] { make_graph(0, EdgeList{}); }) == ErrorKind::InvalidParams);
}

TEST_CASE("duplicate edges collapse and neighbor lists are sorted") {
    Graph g = make_graph(3, EdgeList{{2, 0}, {0, 2}, {1, 0}, {0, 1}});
    CHECK(g.edge_count() == 2);
    auto nb = g.neighbors(0);
    REQUIRE(nb.size() == 2);
    CHECK(nb[0] == 1);
    CHECK(nb[1] == 2);
    CHECK(g.edges() == EdgeList{{0, 1}, {0, 2}});
}

TEST_CASE("single node graph is connected") {
    Graph g = make_graph(1, EdgeList{});
    CHECK(g.size() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("gstar") {
    Graph s = gen_gstar(1, 3);
    CHECK(s.size() == 4);
    CHECK(s.degree(0) == 3);
    for (NodeId v = 1; v < 4; ++v) CHECK(s.degree(v) == 1);

    Graph g = gen_gstar(2, 4);
    CHECK(g.size() == 6);
    CHECK(g.edge_count() == 9);
    CHECK(g.degree(0) == 5);
    CHECK(g.degree(1) == 5);
    for (NodeId v = 2; v < 6; ++v) CHECK(g.degree(v) == 2);
    CHECK(g.max_degree() == 5);
    CHECK(g.min_degree() == 2);
    CHECK(gen_gstar(3, 9).size() == 12);

    CHECK(kind_of([] { gen_gstar(0, 3); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { gen_gstar(4, 3); }) == ErrorKind::InvalidParams);
}

TEST_CASE("badgraph construction") {
    const std::size_t n = 16;
    Graph g = gen_badgraph(n);
    CHECK(g.size() == n);
    // clique on 8 (28) + matching (8) + hub of 4 to R (32) minus hub-matching overlaps (4)
    CHECK(g.edge_count() == 64);
    for (NodeId i = 0; i < 8; ++i) CHECK(g.has_edge(i, i + 8));
    for (NodeId u = 8; u < 16; ++u)
        for (NodeId v = u + 1; v < 16; ++v) CHECK_FALSE(g.has_edge(u, v));
    for (NodeId h = 0; h < 4; ++h)
        for (NodeId r = 8; r < 16; ++r) CHECK(g.has_edge(h, r));
    CHECK_FALSE(g.has_edge(4, 9));

    std::vector<std::size_t> expected{15, 15, 15, 15, 8, 8, 8, 8, 4, 4, 4, 4, 5, 5, 5, 5};
    for (NodeId u = 0; u < n; ++u) CHECK(g.degree(u) == expected[u]);

    CHECK(kind_of([] { gen_badgraph(15); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { gen_badgraph(14); }) == ErrorKind::InvalidParams);
    CHECK(gen_badgraph(64).size() == 64);
}

TEST_CASE("isqrt") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(4096) == 64);
    CHECK(isqrt(4095) == 63);
}

TEST_CASE("family generators") {
    FamilyParams p;
    p.n = 4;
    CHECK(gen_family(Family::Complete, p) == make_graph(4, complete_edges(4)));
    p.n = 5;
    Graph c5 = gen_family(Family::Cycle, p);
    CHECK(c5.edge_count() == 5);
    CHECK(c5.max_degree() == 2);
    CHECK(c5.min_degree() == 2);
    Graph p5 = gen_family(Family::Path, p);
    CHECK(p5.edge_count() == 4);
    CHECK(p5.min_degree() == 1);
    p.n = 8;
    Graph q3 = gen_family(Family::Hypercube, p);
    CHECK(q3.edge_count() == 12);
    CHECK(q3.max_degree() == 3);
    p.n = 6;
    CHECK(kind_of([&] { gen_family(Family::Hypercube, p); }) == ErrorKind::InvalidParams);
    p.n = 2;
    CHECK(kind_of([&] { gen_family(Family::Cycle, p); }) == ErrorKind::InvalidParams);

    CHECK(parse_family("badgraph") == Family::BadGraph);
    CHECK(parse_family("gstar") == Family::GStar);
    CHECK_FALSE(parse_family("petersen").has_value());
    for (auto f : {Family::Complete, Family::Cycle, Family::Path, Family::Gnp, Family::Hypercube,
                   Family::GStar, Family::BadGraph}) {
        CHECK(parse_family(to_string(f)) == f);
    }
}

TEST_CASE("gnp is deterministic per seed") {
    FamilyParams p;
    p.n = 32;
    p.p = 0.3;
    p.seed = 1;
    Graph a = gen_family(Family::Gnp, p);
    Graph b = gen_family(Family::Gnp, p);
    CHECK(a == b);
    p.seed = 2;
    CHECK_FALSE(gen_family(Family::Gnp, p) == a);

    p.n = 40;
    p.p = 0.001;
    CHECK(kind_of([&] { gen_family(Family::Gnp, p); }) == ErrorKind::GenerationFailed);
    p.p = 1.5;
    CHECK(kind_of([&] { gen_family(Family::Gnp, p); }) == ErrorKind::InvalidParams);
}

TEST_CASE("relabeling preserves structure") {
    Graph g = gen_gstar(2, 4);
    std::vector<NodeId> perm{5, 4, 3, 2, 1, 0};
    Graph h = g.relabeled(perm);
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.degree(5) == 5);
    CHECK(h.degree(4) == 5);
    for (auto [u, v] : g.edges()) CHECK(h.has_edge(perm[u], perm[v]));
}

TEST_CASE("stability") {
    CHECK(Stability::unbounded().is_unbounded());
    CHECK(to_string(Stability::unbounded()) == "inf");
    Stability t2 = Stability::every(2);
    CHECK(to_string(t2) == "2");
    CHECK(t2.interval_of(1) == 0);
    CHECK(t2.interval_of(2) == 0);
    CHECK(t2.interval_of(3) == 1);
    CHECK(Stability::unbounded().interval_of(1000) == 0);
    CHECK(kind_of([] { Stability::every(0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("static dynamic graph returns the base in every round") {
    Graph k4 = make_graph(4, complete_edges(4));
    auto dg = make_dynamic(k4, Stability::unbounded(), DynamicsModel::Static);
    for (std::uint64_t r : {1, 2, 50, 1000}) CHECK(*dg.frame(r) == k4);
    CHECK(is_tau_stable(dg, 100));
}

TEST_CASE("permute dynamics on badgraph(64), tau 2") {
    Graph base = gen_badgraph(64);
    auto dg = make_dynamic(base, Stability::every(2), DynamicsModel::Permute, 7);
    CHECK(*dg.frame(1) == *dg.frame(2));
    CHECK(*dg.frame(3) == *dg.frame(4));
    CHECK(*dg.frame(1) == base);
    CHECK_FALSE(*dg.frame(3) == *dg.frame(1));
    for (std::uint64_t r = 1; r <= 8; ++r) {
        auto f = dg.frame(r);
        CHECK(f->edge_count() == base.edge_count());
        std::multiset<std::size_t> a, b;
        for (NodeId u = 0; u < 64; ++u) {
            a.insert(base.degree(u));
            b.insert(f->degree(u));
        }
        CHECK(a == b);
    }
    CHECK(is_tau_stable(dg, 64));
    // Frames are a pure function of (seed, interval).
    auto again = make_dynamic(base, Stability::every(2), DynamicsModel::Permute, 7);
    CHECK(*again.frame(5) == *dg.frame(6));
    CHECK(kind_of([&] { DynamicGraph::generated(base, Stability::every(1), DynamicsModel::Explicit); }) ==
          ErrorKind::InvalidParams);
}

TEST_CASE("explicit frames") {
    Graph k4 = make_graph(4, complete_edges(4));
    Graph c4 = make_graph(4, EdgeList{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(kind_of([&] { DynamicGraph::explicit_frames({k4, c4}, Stability::every(2)); }) ==
          ErrorKind::StabilityViolation);

    auto dg = DynamicGraph::explicit_frames({k4, k4, c4, c4}, Stability::every(2));
    CHECK(*dg.frame(2) == k4);
    CHECK(*dg.frame(3) == c4);
    CHECK(*dg.frame(99) == c4);
    CHECK(dg.base() == nullptr);
    CHECK(is_tau_stable(dg, 10));

    Graph p3 = make_graph(3, EdgeList{{0, 1}, {1, 2}});
    CHECK(kind_of([&] { DynamicGraph::explicit_frames({k4, p3}, Stability::every(1)); }) ==
          ErrorKind::InvalidParams);
    CHECK(kind_of([&] { DynamicGraph::explicit_frames({}, Stability::every(1)); }) ==
          ErrorKind::InvalidParams);
}

TEST_CASE("exhaustive enumeration matches known graph counts") {
    const std::size_t all[] = {1, 2, 4, 11, 34, 156, 1044, 12346};
    const std::size_t connected[] = {1, 1, 2, 6, 21, 112, 853, 11117};
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(testing::all_graph_codes(n).size() == all[n - 1]);
        CHECK(testing::connected_graphs(n).size() == connected[n - 1]);
    }
}

TEST_CASE("random suite is connected and reproducible") {
    auto a = testing::random_connected_suite(50, 12, 3);
    auto b = testing::random_connected_suite(50, 12, 3);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].size() >= 2);
        CHECK(a[i].size() <= 12);
    }
}

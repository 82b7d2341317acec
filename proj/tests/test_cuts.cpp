#include "planarmatch/cuts.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/oracle.hpp"
#include "planarmatch/parallel.hpp"
#include "planarmatch/pfaffian.hpp"

using namespace planarmatch;

namespace {

bool failsWith(Errc code, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

std::map<EdgeId, Rat> unitCaps(const PlanarGraph& g) {
    std::map<EdgeId, Rat> cap;
    for (EdgeId e : g.edgeIds()) {
        cap[e] = 1;
    }
    return cap;
}

std::map<EdgeId, Rat> constCaps(const PlanarGraph& g, const Rat& value) {
    std::map<EdgeId, Rat> cap;
    for (EdgeId e : g.edgeIds()) {
        cap[e] = value;
    }
    return cap;
}

// Deterministic positive rational capacities for the oracle cross-checks.
std::map<EdgeId, Rat> skewCaps(const PlanarGraph& g, int salt) {
    std::map<EdgeId, Rat> cap;
    for (EdgeId e : g.edgeIds()) {
        cap[e] = makeRat((e * 5 + salt * 3) % 7 + 1, e % 3 + 1);
    }
    return cap;
}

Rat cutWeight(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
              const std::set<VertexId>& side) {
    Rat total;
    for (const auto& [id, e] : g.edges()) {
        if (side.count(e.u) != side.count(e.v)) {
            auto it = cap.find(id);
            if (it != cap.end()) {
                total += it->second;
            }
        }
    }
    return total;
}

// Minimum s-t cut value by enumerating the sink sides. Small graphs only.
Rat bruteMinCutValue(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                     VertexId s, VertexId t) {
    std::vector<VertexId> rest;
    for (VertexId v : g.vertexIds()) {
        if (v != s && v != t) {
            rest.push_back(v);
        }
    }
    REQUIRE(rest.size() <= 12);
    Rat best;
    bool first = true;
    for (unsigned long mask = 0; mask < (1UL << rest.size()); ++mask) {
        std::set<VertexId> side{t};
        for (size_t i = 0; i < rest.size(); ++i) {
            if (mask & (1UL << i)) {
                side.insert(rest[i]);
            }
        }
        const Rat w = cutWeight(g, cap, side);
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    return best;
}

// Checks the minimalMinCut contract for one pair: the side is a minimum cut
// at the sink and no proper subset of it containing the sink is one.
void checkMinimalSide(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                      VertexId r, VertexId v) {
    const MinCutSide cut = minimalMinCut(g, cap, r, v);
    CHECK(cut.side.count(v) == 1);
    CHECK(cut.side.count(r) == 0);
    CHECK(cutWeight(g, cap, cut.side) == cut.value);
    CHECK(cut.value == bruteMinCutValue(g, cap, r, v));
    std::vector<VertexId> others;
    for (VertexId x : cut.side) {
        if (x != v) {
            others.push_back(x);
        }
    }
    REQUIRE(others.size() <= 12);
    for (unsigned long mask = 0; mask + 1 < (1UL << others.size()); ++mask) {
        std::set<VertexId> sub{v};
        for (size_t i = 0; i < others.size(); ++i) {
            if (mask & (1UL << i)) {
                sub.insert(others[i]);
            }
        }
        CHECK(cutWeight(g, cap, sub) > cut.value);
    }
}

// Vertices on the a side of the tree once edge k is removed.
std::set<VertexId> treeSplitSide(const GomoryHuTree& tree, size_t k) {
    std::set<int> comp{tree.treeEdges[k].a};
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t j = 0; j < tree.treeEdges.size(); ++j) {
            if (j == k) {
                continue;
            }
            const auto& e = tree.treeEdges[j];
            if (comp.count(e.a) != comp.count(e.b)) {
                comp.insert(e.a);
                comp.insert(e.b);
                grew = true;
            }
        }
    }
    std::set<VertexId> side;
    for (int c : comp) {
        side.insert(tree.nodes[c].begin(), tree.nodes[c].end());
    }
    return side;
}

Rat treePathMin(const GomoryHuTree& tree, VertexId x, VertexId y) {
    // The finished tree has singleton classes, so vertices locate uniquely.
    auto indexOf = [&](VertexId v) {
        for (size_t i = 0; i < tree.nodes.size(); ++i) {
            if (tree.nodes[i].count(v) != 0) {
                return static_cast<int>(i);
            }
        }
        REQUIRE(false);
        return -1;
    };
    const int source = indexOf(x);
    const int target = indexOf(y);
    // Cheapest edge on the unique tree path from the source, per node.
    std::map<int, Rat> minAlong;
    std::set<int> reached{source};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : tree.treeEdges) {
            const std::pair<int, int> arcs[2] = {{e.a, e.b}, {e.b, e.a}};
            for (const auto& [from, to] : arcs) {
                if (reached.count(from) == 0 || reached.count(to) != 0) {
                    continue;
                }
                Rat value = e.weight;
                if (from != source && minAlong.at(from) < value) {
                    value = minAlong.at(from);
                }
                minAlong[to] = value;
                reached.insert(to);
                grew = true;
            }
        }
    }
    REQUIRE(minAlong.count(target) == 1);
    return minAlong.at(target);
}

// Full Gomory-Hu contract on one instance: singleton classes partition the
// vertices, every tree edge is a real minimum cut between its witnesses,
// and path minima reproduce all pairwise flow values.
void checkTree(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    const GomoryHuTree tree = gomoryHuTree(g, cap);
    const std::vector<VertexId> vertices = g.vertexIds();
    const int n = static_cast<int>(vertices.size());
    REQUIRE(static_cast<int>(tree.nodes.size()) == n);
    std::set<VertexId> covered;
    for (const auto& node : tree.nodes) {
        REQUIRE(node.size() == 1);
        covered.insert(*node.begin());
    }
    CHECK(covered == std::set<VertexId>(vertices.begin(), vertices.end()));
    REQUIRE(static_cast<int>(tree.treeEdges.size()) == n - 1);
    int bound = 0;
    while ((1 << bound) < n) {
        ++bound;
    }
    CHECK(tree.rounds <= bound);
    for (size_t k = 0; k < tree.treeEdges.size(); ++k) {
        const auto& e = tree.treeEdges[k];
        CHECK(tree.nodes[e.a].count(e.u) == 1);
        CHECK(tree.nodes[e.b].count(e.v) == 1);
        CHECK(maxFlowMinCut(g, cap, e.u, e.v).value == e.weight);
        CHECK(cutWeight(g, cap, treeSplitSide(tree, k)) == e.weight);
    }
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            const MaxFlowResult flow = maxFlowMinCut(g, cap, vertices[i], vertices[j]);
            CHECK(flow.sourceSide.count(vertices[i]) == 1);
            CHECK(flow.sourceSide.count(vertices[j]) == 0);
            CHECK(cutWeight(g, cap, flow.sourceSide) == flow.value);
            CHECK(treePathMin(tree, vertices[i], vertices[j]) == flow.value);
        }
    }
}

void checkOddCutAgainstOracle(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    const OddCut got = minOddCut(g, cap);
    const auto expected = oracle::bruteMinOddCut(g, cap);
    CHECK(got.weight == expected.value);
    CHECK(got.side.size() % 2 == 1);
    CHECK(!got.side.empty());
    CHECK(got.side.size() < static_cast<size_t>(g.vertexCount()));
    CHECK(cutWeight(g, cap, got.side) == got.weight);
}

// Star with the hub carrying the largest id, so the candidate scan has to
// reject every leaf before finding it.
PlanarGraph starCenterLast() {
    std::map<EdgeId, Edge> edges{
        {1, {1, 5, 0}}, {2, {2, 5, 0}}, {3, {3, 5, 0}}, {4, {4, 5, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{1, 0}}}, {2, {{2, 0}}}, {3, {{3, 0}}}, {4, {{4, 0}}},
        {5, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

std::set<VertexId> allVertices(const PlanarGraph& g) {
    const auto ids = g.vertexIds();
    return std::set<VertexId>(ids.begin(), ids.end());
}

}

TEST_CASE("max flow matches hand-computed values") {
    const auto single = fixtures::singleEdge();
    const auto one = maxFlowMinCut(single, {{1, makeRat(3, 2)}}, 1, 2);
    CHECK(one.value == makeRat(3, 2));
    CHECK(one.sourceSide == std::set<VertexId>{1});

    // Two vertex-disjoint paths between opposite cycle vertices, one of
    // capacity 1 and one of capacity 2.
    const auto square = fixtures::cycle(4);
    const std::map<EdgeId, Rat> caps{{1, 1}, {2, 1}, {3, 2}, {4, 2}};
    const auto both = maxFlowMinCut(square, caps, 1, 3);
    CHECK(both.value == 3);
    CHECK(cutWeight(square, caps, both.sourceSide) == 3);

    const auto board = fixtures::grid(4, 4);
    const auto corners = maxFlowMinCut(board, unitCaps(board), 1, 16);
    CHECK(corners.value == 2);
    CHECK(cutWeight(board, unitCaps(board), corners.sourceSide) == 2);
}

TEST_CASE("flow input guards") {
    const auto g = fixtures::cycle(4);
    CHECK(failsWith(Errc::SameTerminals,
                    [&] { maxFlowMinCut(g, unitCaps(g), 2, 2); }));
    CHECK(failsWith(Errc::SameTerminals,
                    [&] { minimalMinCut(g, unitCaps(g), 3, 3); }));
    CHECK(failsWith(Errc::PreconditionViolated,
                    [&] { maxFlowMinCut(g, unitCaps(g), 1, 9); }));
    CHECK(failsWith(Errc::PreconditionViolated,
                    [&] { maxFlowMinCut(g, {{1, Rat(-1)}}, 1, 3); }));
    CHECK(failsWith(Errc::PreconditionViolated,
                    [&] { centralVertex(g, unitCaps(g), {2}); }));
}

TEST_CASE("minimal min cut returns the tight side at the sink") {
    const auto path = fixtures::grid(1, 3);
    CHECK(minimalMinCut(path, unitCaps(path), 1, 3).side == std::set<VertexId>{3});

    const auto square = fixtures::cycle(4);
    CHECK(minimalMinCut(square, unitCaps(square), 1, 3).side == std::set<VertexId>{3});

    const auto dumbbell = fixtures::bridgedTriangles();
    const auto far = minimalMinCut(dumbbell, unitCaps(dumbbell), 1, 5);
    CHECK(far.side == std::set<VertexId>{4, 5, 6});
    CHECK(far.value == 1);
}

TEST_CASE("minimal min cut minimality against enumeration") {
    const std::vector<PlanarGraph> graphs{
        fixtures::bridgedTriangles(), fixtures::cycle(6), fixtures::prism(),
        fixtures::k4(),
    };
    for (const auto& g : graphs) {
        for (const auto& cap : {unitCaps(g), skewCaps(g, 1), skewCaps(g, 2)}) {
            for (VertexId r : g.vertexIds()) {
                for (VertexId v : g.vertexIds()) {
                    if (r != v) {
                        checkMinimalSide(g, cap, r, v);
                    }
                }
            }
        }
    }
}

TEST_CASE("central vertex picks the balanced splitter") {
    const auto path = fixtures::grid(1, 3);
    CHECK(centralVertex(path, unitCaps(path), allVertices(path)) == 2);

    const auto star = starCenterLast();
    CHECK(centralVertex(star, unitCaps(star), allVertices(star)) == 5);

    // On an even cycle every vertex qualifies, so the scan stops at the
    // first.
    const auto ring = fixtures::cycle(8);
    CHECK(centralVertex(ring, unitCaps(ring), allVertices(ring)) == 1);
}

TEST_CASE("gomory-hu tree of a path keeps its edges") {
    const auto path = fixtures::grid(1, 4);
    const std::map<EdgeId, Rat> caps{{1, 5}, {2, 3}, {3, 7}};
    const GomoryHuTree tree = gomoryHuTree(path, caps);
    REQUIRE(tree.nodes.size() == 4);
    REQUIRE(tree.treeEdges.size() == 3);
    std::map<std::set<VertexId>, Rat> got;
    for (const auto& e : tree.treeEdges) {
        REQUIRE(tree.nodes[e.a].size() == 1);
        REQUIRE(tree.nodes[e.b].size() == 1);
        got[{*tree.nodes[e.a].begin(), *tree.nodes[e.b].begin()}] = e.weight;
    }
    const std::map<std::set<VertexId>, Rat> expected{
        {{1, 2}, 5}, {{2, 3}, 3}, {{3, 4}, 7},
    };
    CHECK(got == expected);
}

TEST_CASE("gomory-hu tree of the unit four cycle") {
    const auto square = fixtures::cycle(4);
    const GomoryHuTree tree = gomoryHuTree(square, unitCaps(square));
    REQUIRE(tree.treeEdges.size() == 3);
    for (const auto& e : tree.treeEdges) {
        CHECK(e.weight == 2);
    }
}

TEST_CASE("gomory-hu tree matches all pairwise flows") {
    const auto ring = fixtures::cycle(6);
    checkTree(ring, unitCaps(ring));
    checkTree(ring, skewCaps(ring, 1));
    checkTree(ring, avgPoint(ring, {}));

    const auto drum = fixtures::prism();
    checkTree(drum, unitCaps(drum));
    checkTree(drum, skewCaps(drum, 2));
    checkTree(drum, avgPoint(drum, {}));

    const auto complete = fixtures::k4();
    checkTree(complete, unitCaps(complete));
    checkTree(complete, avgPoint(complete, {}));

    // The indicator of the unique perfect matching leaves most capacities
    // zero, which exercises flow values of zero.
    const auto dumbbell = fixtures::bridgedTriangles();
    checkTree(dumbbell, unitCaps(dumbbell));
    checkTree(dumbbell, avgPoint(dumbbell, {}));

    const auto oddBoard = fixtures::grid(3, 3);
    checkTree(oddBoard, unitCaps(oddBoard));

    const auto board = fixtures::grid(3, 4);
    checkTree(board, unitCaps(board));
    checkTree(board, avgPoint(board, {}));

    const auto small = fixtures::grid(2, 2);
    checkTree(small, skewCaps(small, 3));

    const auto single = fixtures::singleEdge();
    checkTree(single, {{1, makeRat(3, 2)}});

    const auto star = starCenterLast();
    checkTree(star, unitCaps(star));
}

TEST_CASE("gomory-hu requires a connected graph") {
    const auto split = fixtures::twoEdges();
    CHECK(failsWith(Errc::Disconnected,
                    [&] { gomoryHuTree(split, unitCaps(split)); }));
    const auto partial = fixtures::c4PlusEdge();
    CHECK(failsWith(Errc::Disconnected,
                    [&] { minOddCut(partial, unitCaps(partial)); }));
}

TEST_CASE("minimum odd cut on hand instances") {
    // Two bridged triangles with capacities from the unique perfect
    // matching: the cheapest odd side cuts exactly one matched edge.
    const auto dumbbell = fixtures::bridgedTriangles();
    const std::map<EdgeId, Rat> indicator{{1, 1}, {5, 1}, {7, 1}};
    const OddCut acrossBridge = minOddCut(dumbbell, indicator);
    CHECK(acrossBridge.weight == 1);
    CHECK(acrossBridge.side.size() % 2 == 1);
    CHECK(cutWeight(dumbbell, indicator, acrossBridge.side) == 1);

    const auto square = fixtures::cycle(4);
    const OddCut half = minOddCut(square, constCaps(square, makeRat(1, 2)));
    CHECK(half.weight == 1);
    CHECK(half.side.size() % 2 == 1);

    const auto ring = fixtures::cycle(6);
    CHECK(minOddCut(ring, unitCaps(ring)).weight == 2);

    CHECK(failsWith(Errc::OddVertexCount, [&] {
        const auto odd = fixtures::cycle(5);
        minOddCut(odd, unitCaps(odd));
    }));
}

TEST_CASE("minimum odd cut agrees with subset enumeration") {
    const auto square = fixtures::cycle(4);
    checkOddCutAgainstOracle(square, unitCaps(square));
    checkOddCutAgainstOracle(square, constCaps(square, makeRat(1, 2)));
    checkOddCutAgainstOracle(square, skewCaps(square, 1));

    const auto ring = fixtures::cycle(6);
    checkOddCutAgainstOracle(ring, unitCaps(ring));
    checkOddCutAgainstOracle(ring, skewCaps(ring, 2));

    const auto complete = fixtures::k4();
    checkOddCutAgainstOracle(complete, unitCaps(complete));
    checkOddCutAgainstOracle(complete, avgPoint(complete, {}));

    const auto drum = fixtures::prism();
    checkOddCutAgainstOracle(drum, unitCaps(drum));
    checkOddCutAgainstOracle(drum, avgPoint(drum, {}));
    checkOddCutAgainstOracle(drum, skewCaps(drum, 3));

    const auto dumbbell = fixtures::bridgedTriangles();
    checkOddCutAgainstOracle(dumbbell, unitCaps(dumbbell));
    checkOddCutAgainstOracle(dumbbell, avgPoint(dumbbell, {}));

    const auto box = fixtures::grid(2, 3);
    checkOddCutAgainstOracle(box, unitCaps(box));
    checkOddCutAgainstOracle(box, avgPoint(box, {}));

    const auto board = fixtures::grid(3, 4);
    checkOddCutAgainstOracle(board, unitCaps(board));
    checkOddCutAgainstOracle(board, avgPoint(board, {}));

    const auto small = fixtures::grid(2, 2);
    checkOddCutAgainstOracle(small, skewCaps(small, 4));
}

TEST_CASE("gomory-hu output does not depend on the worker count") {
    const auto drum = fixtures::prism();
    const auto cap = skewCaps(drum, 5);
    setWorkerCount(1);
    const GomoryHuTree serial = gomoryHuTree(drum, cap);
    setWorkerCount(4);
    const GomoryHuTree parallel = gomoryHuTree(drum, cap);
    setWorkerCount(1);
    CHECK(serial.nodes == parallel.nodes);
    CHECK(serial.rounds == parallel.rounds);
    REQUIRE(serial.treeEdges.size() == parallel.treeEdges.size());
    for (size_t k = 0; k < serial.treeEdges.size(); ++k) {
        CHECK(serial.treeEdges[k].a == parallel.treeEdges[k].a);
        CHECK(serial.treeEdges[k].b == parallel.treeEdges[k].b);
        CHECK(serial.treeEdges[k].weight == parallel.treeEdges[k].weight);
        CHECK(serial.treeEdges[k].u == parallel.treeEdges[k].u);
        CHECK(serial.treeEdges[k].v == parallel.treeEdges[k].v);
    }
}

#include "doctest.h"

#include <numeric>

#include "fixtures.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/graph.hpp"

using namespace planarmatch;

namespace {

std::size_t boundaryLengthSum(const PlanarGraph& g) {
    std::size_t total = 0;
    for (const Face& f : g.faces()) total += f.boundary.size();
    return total;
}

}

TEST_CASE("cycle embeddings have two faces") {
    for (int n : {3, 4, 7, 10}) {
        PlanarGraph g = fixtures::cycle(n);
        CHECK(g.vertexCount() == n);
        CHECK(g.edgeCount() == n);
        CHECK(g.faces().size() == 2);
        CHECK(boundaryLengthSum(g) == 2 * static_cast<std::size_t>(n));
    }
}

TEST_CASE("K4 embedding has four faces") {
    PlanarGraph g = fixtures::k4();
    CHECK(g.faces().size() == 4);
    CHECK(boundaryLengthSum(g) == 12);
}

TEST_CASE("3x3 grid has five faces and the expected dual") {
    PlanarGraph g = fixtures::grid(3, 3);
    CHECK(g.vertexCount() == 9);
    CHECK(g.edgeCount() == 12);
    CHECK(g.faces().size() == 5);

    DualGraph d = g.dual();
    CHECK(d.faceCount == 5);
    CHECK(d.arcs.size() == 12);
    CHECK(d.bridgeLoops.empty());
    CHECK(d.sides.size() == 12);
}

TEST_CASE("single edge dualizes to one face with a recorded bridge") {
    PlanarGraph g = fixtures::singleEdge();
    auto faces = g.faces();
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].boundary.size() == 2);

    DualGraph d = g.dual();
    CHECK(d.faceCount == 1);
    CHECK(d.arcs.empty());
    CHECK(d.bridgeLoops == std::vector<EdgeId>{1});
    CHECK(d.sides.at(1) == std::pair<int, int>{0, 0});
}

TEST_CASE("dual edge correspondence is a bijection") {
    for (const PlanarGraph& g :
         {fixtures::prism(), fixtures::bridgedTriangles(), fixtures::grid(2, 4)}) {
        DualGraph d = g.dual();
        std::set<EdgeId> covered;
        for (const auto& arc : d.arcs) {
            CHECK(covered.insert(arc.primal).second);
            CHECK(arc.a < arc.b);
        }
        for (EdgeId id : d.bridgeLoops) CHECK(covered.insert(id).second);
        CHECK(covered.size() == static_cast<std::size_t>(g.edgeCount()));
    }
}

TEST_CASE("prism and bridged triangles validate with the right face counts") {
    CHECK(fixtures::prism().faces().size() == 5);
    CHECK(fixtures::bridgedTriangles().faces().size() == 3);
    CHECK(fixtures::c4PlusEdge().faces().size() == 3);
}

TEST_CASE("build rejects loops") {
    std::map<EdgeId, Edge> edges{{1, {1, 1, 0}}};
    std::map<VertexId, std::vector<Dart>> rotation{{1, {{1, 0}, {1, 1}}}};
    CHECK_THROWS_AS(PlanarGraph::build(edges, rotation), Error);
    try {
        PlanarGraph::build(edges, rotation);
    } catch (const Error& err) {
        CHECK(err.code() == Errc::LoopEdge);
    }
}

TEST_CASE("build rejects missing and duplicated darts") {
    std::map<EdgeId, Edge> edges{{1, {1, 2, 0}}};
    std::map<VertexId, std::vector<Dart>> missingEnd{{1, {{1, 0}}}, {2, {}}};
    try {
        PlanarGraph::build(edges, missingEnd);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::MalformedRotation);
    }
    std::map<VertexId, std::vector<Dart>> wrongHost{{1, {{1, 0}, {1, 1}}}, {2, {}}};
    try {
        PlanarGraph::build(edges, wrongHost);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::MalformedRotation);
    }
}

TEST_CASE("build rejects non-planar rotation systems") {
    // K4 with one vertex's rotation reversed has genus one.
    std::map<EdgeId, Edge> edges{
        {1, {1, 2, 0}}, {2, {1, 3, 0}}, {3, {1, 4, 0}},
        {4, {2, 3, 0}}, {5, {2, 4, 0}}, {6, {3, 4, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{2, 0}, {3, 0}, {1, 0}}},
        {2, {{1, 1}, {5, 0}, {4, 0}}},
        {3, {{4, 1}, {6, 0}, {2, 1}}},
        {4, {{5, 1}, {6, 1}, {3, 1}}},
    };
    try {
        PlanarGraph::build(edges, rotation);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::EulerViolation);
    }
}

TEST_CASE("rotation storage is canonical so equal graphs compare equal") {
    PlanarGraph a = fixtures::cycle(4);
    // Same cycle, rotation lists phased differently.
    std::map<EdgeId, Edge> edges;
    for (const auto& [id, record] : a.edges()) edges[id] = record;
    std::map<VertexId, std::vector<Dart>> rotation;
    for (const auto& [v, ring] : a.rotation()) {
        std::vector<Dart> shifted(ring.rbegin(), ring.rend());
        // Reversing a two element cyclic order keeps the same rotation.
        rotation[v] = shifted;
    }
    PlanarGraph b = PlanarGraph::build(edges, rotation);
    CHECK(a == b);
}

TEST_CASE("withoutEdges keeps vertices and stays valid") {
    PlanarGraph g = fixtures::grid(3, 3);
    PlanarGraph h = g.withoutEdges({1, 2});
    CHECK(h.vertexCount() == 9);
    CHECK(h.edgeCount() == 10);
    CHECK_FALSE(h.hasEdge(1));
    CHECK(h.hasVertex(1));
    CHECK_THROWS_AS(g.withoutEdges({99}), Error);
}

TEST_CASE("inducedOn drops the right edges") {
    PlanarGraph g = fixtures::prism();
    PlanarGraph top = g.inducedOn({1, 2, 3});
    CHECK(top.vertexCount() == 3);
    CHECK(top.edgeCount() == 3);
    CHECK(top.faces().size() == 2);

    PlanarGraph h = g.withoutVertices({1});
    CHECK(h.vertexCount() == 5);
    CHECK(h.edgeCount() == 6);
}

TEST_CASE("withWeights replaces the whole weight vector") {
    PlanarGraph g = fixtures::cycle(4).withWeights({{1, 5}, {3, 2}});
    CHECK(g.edge(1).weight == 5);
    CHECK(g.edge(2).weight == 0);
    CHECK(g.edge(3).weight == 2);
    PlanarGraph cleared = g.withWeights({});
    CHECK(cleared.edge(1).weight == 0);
    CHECK_THROWS_AS(g.withWeights({{99, 1}}), Error);
}

TEST_CASE("incident edges follow rotation order and degrees count ends") {
    PlanarGraph g = fixtures::k4();
    CHECK(g.degree(1) == 3);
    CHECK(g.incidentEdges(1) == std::vector<EdgeId>{1, 2, 3});
    CHECK(g.dartVertex(Dart{5, 0}) == 2);
    CHECK(g.dartVertex(Dart{5, 1}) == 4);
}

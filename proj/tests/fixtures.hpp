#pragma once

// Hand-built graphs shared by the test files. Each is constructed directly
// from a drawing (rotations read off vertex by vertex), independent of the
// library's generators, so the tests cross-check those too.

#include <map>
#include <vector>

#include "planarmatch/graph.hpp"

namespace planarmatch::fixtures {

// Cycle 1-2-...-n; edge i joins i and i%n+1.
inline PlanarGraph cycle(int n) {
    std::map<EdgeId, Edge> edges;
    std::map<VertexId, std::vector<Dart>> rotation;
    for (int i = 1; i <= n; ++i) {
        edges[i] = Edge{i, i % n + 1, 0};
    }
    for (int v = 1; v <= n; ++v) {
        EdgeId before = v == 1 ? n : v - 1;
        rotation[v] = {Dart{before, 1}, Dart{v, 0}};
    }
    return PlanarGraph::build(edges, rotation);
}

// K4 drawn as the triangle 1,2,3 with 4 inside; rotations are clockwise.
// Edges: 1=12, 2=13, 3=14, 4=23, 5=24, 6=34.
inline PlanarGraph k4() {
    std::map<EdgeId, Edge> edges{
        {1, {1, 2, 0}}, {2, {1, 3, 0}}, {3, {1, 4, 0}},
        {4, {2, 3, 0}}, {5, {2, 4, 0}}, {6, {3, 4, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{2, 0}, {3, 0}, {1, 0}}},
        {2, {{1, 1}, {5, 0}, {4, 0}}},
        {3, {{4, 1}, {6, 0}, {2, 1}}},
        {4, {{5, 1}, {3, 1}, {6, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

// rows x cols grid, vertices numbered row-major from 1. Rotations follow
// compass order north, east, south, west, which is consistent across the
// drawing.
inline PlanarGraph grid(int rows, int cols) {
    auto vertexAt = [&](int r, int c) { return r * cols + c + 1; };
    std::map<EdgeId, Edge> edges;
    std::map<std::pair<int, int>, EdgeId> rightOf;
    std::map<std::pair<int, int>, EdgeId> below;
    EdgeId next = 1;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                rightOf[{r, c}] = next;
                edges[next] = Edge{vertexAt(r, c), vertexAt(r, c + 1), 0};
                ++next;
            }
            if (r + 1 < rows) {
                below[{r, c}] = next;
                edges[next] = Edge{vertexAt(r, c), vertexAt(r + 1, c), 0};
                ++next;
            }
        }
    }
    std::map<VertexId, std::vector<Dart>> rotation;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::vector<Dart> ring;
            if (r > 0) ring.push_back({below.at({r - 1, c}), 1});
            if (c + 1 < cols) ring.push_back({rightOf.at({r, c}), 0});
            if (r + 1 < rows) ring.push_back({below.at({r, c}), 0});
            if (c > 0) ring.push_back({rightOf.at({r, c - 1}), 1});
            rotation[vertexAt(r, c)] = std::move(ring);
        }
    }
    return PlanarGraph::build(edges, rotation);
}

// Triangular prism: outer triangle 1,2,3, inner triangle 4,5,6, rungs 1-4,
// 2-5, 3-6. Edges: 1=12, 2=23, 3=13, 4=45, 5=56, 6=46, 7=14, 8=25, 9=36.
inline PlanarGraph prism() {
    std::map<EdgeId, Edge> edges{
        {1, {1, 2, 0}}, {2, {2, 3, 0}}, {3, {1, 3, 0}},
        {4, {4, 5, 0}}, {5, {5, 6, 0}}, {6, {4, 6, 0}},
        {7, {1, 4, 0}}, {8, {2, 5, 0}}, {9, {3, 6, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{3, 0}, {7, 0}, {1, 0}}},
        {2, {{1, 1}, {8, 0}, {2, 0}}},
        {3, {{2, 1}, {9, 0}, {3, 1}}},
        {4, {{6, 0}, {4, 0}, {7, 1}}},
        {5, {{8, 1}, {4, 1}, {5, 0}}},
        {6, {{9, 1}, {5, 1}, {6, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

// Two triangles joined by the bridge 3-4. Edges: 1=12, 2=23, 3=13, 4=45,
// 5=56, 6=46, 7=34.
inline PlanarGraph bridgedTriangles() {
    std::map<EdgeId, Edge> edges{
        {1, {1, 2, 0}}, {2, {2, 3, 0}}, {3, {1, 3, 0}},
        {4, {4, 5, 0}}, {5, {5, 6, 0}}, {6, {4, 6, 0}},
        {7, {3, 4, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{1, 0}, {3, 0}}},
        {2, {{2, 0}, {1, 1}}},
        {3, {{2, 1}, {7, 0}, {3, 1}}},
        {4, {{6, 0}, {4, 0}, {7, 1}}},
        {5, {{4, 1}, {5, 0}}},
        {6, {{5, 1}, {6, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

// C4 on 1..4 plus the separate matched edge 5-6 (edge 5).
inline PlanarGraph c4PlusEdge() {
    std::map<EdgeId, Edge> edges{
        {1, {1, 2, 0}}, {2, {2, 3, 0}}, {3, {3, 4, 0}}, {4, {4, 1, 0}},
        {5, {5, 6, 0}},
    };
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{4, 1}, {1, 0}}}, {2, {{1, 1}, {2, 0}}},
        {3, {{2, 1}, {3, 0}}}, {4, {{3, 1}, {4, 0}}},
        {5, {{5, 0}}},         {6, {{5, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

// Single edge 1-2.
inline PlanarGraph singleEdge() {
    std::map<EdgeId, Edge> edges{{1, {1, 2, 0}}};
    std::map<VertexId, std::vector<Dart>> rotation{{1, {{1, 0}}}, {2, {{1, 1}}}};
    return PlanarGraph::build(edges, rotation);
}

// Two parallel edges between 1 and 2 with the given weights.
inline PlanarGraph bigon(long long w1, long long w2) {
    std::map<EdgeId, Edge> edges{{1, {1, 2, w1}}, {2, {1, 2, w2}}};
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{1, 0}, {2, 0}}},
        {2, {{2, 1}, {1, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

// The disjoint edges 1-2 and 3-4.
inline PlanarGraph twoEdges() {
    std::map<EdgeId, Edge> edges{{1, {1, 2, 0}}, {2, {3, 4, 0}}};
    std::map<VertexId, std::vector<Dart>> rotation{
        {1, {{1, 0}}}, {2, {{1, 1}}}, {3, {{2, 0}}}, {4, {{2, 1}}},
    };
    return PlanarGraph::build(edges, rotation);
}

}

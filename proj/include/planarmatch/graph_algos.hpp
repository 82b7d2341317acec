#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "planarmatch/graph.hpp"

namespace planarmatch {

// Simple undirected graph used for the intersection parity graph, dual
// skeletons and the block structure helpers. Edges are stored with the
// smaller endpoint first.
struct AbstractGraph {
    std::set<int> nodes;
    std::set<std::pair<int, int>> edges;

    void addNode(int v) { nodes.insert(v); }
    void addEdge(int a, int b);
    bool hasEdge(int a, int b) const;
    std::vector<int> neighbors(int v) const;
    int nodeCount() const { return static_cast<int>(nodes.size()); }
    int edgeCount() const { return static_cast<int>(edges.size()); }
};

// Subgraph on the kept nodes and the edges with both endpoints kept.
AbstractGraph inducedSubgraph(const AbstractGraph& g, const std::set<int>& keep);

// Components are listed by ascending minimum element.
std::vector<std::set<int>> connectedComponents(const AbstractGraph& g);
std::vector<std::set<VertexId>> connectedComponents(const PlanarGraph& g);

// Kruskal by ascending edge id; one tree per component.
std::set<EdgeId> spanningForest(const PlanarGraph& g);

// Parent map over the vertices reachable from root; the root maps to itself.
// Neighbors are explored in ascending order, so the tree is deterministic.
std::map<int, int> dfsTree(const AbstractGraph& g, int root);

struct Block {
    std::set<int> vertices;
    std::set<std::pair<int, int>> edges;
};

// Maximal biconnected subgraphs as edge sets (a bridge forms a two-vertex
// block). Isolated vertices belong to no block.
std::vector<Block> biconnectedComponents(const AbstractGraph& g);

std::set<int> cutVertices(const AbstractGraph& g);

// Bipartite tree (forest for disconnected input) joining each cut vertex to
// the blocks containing it. Tree node ids: block i maps to node i, the j-th
// smallest cut vertex maps to node blocks.size() + j.
struct BlockCutTree {
    std::vector<Block> blocks;
    std::vector<int> cutVerts;
    AbstractGraph tree;

    int blockNode(int blockIndex) const { return blockIndex; }
    int cutNode(int vertex) const;
};

BlockCutTree blockCutTree(const AbstractGraph& g);

// Open ear decomposition of a biconnected graph with at least two edges.
// ears[0] is a cycle given as a vertex sequence without repeating the first
// vertex; every later ear is a path whose endpoints (and only those) lie on
// earlier ears. Throws NotBiconnected otherwise.
std::vector<std::vector<int>> openEarDecomposition(const AbstractGraph& g);

}

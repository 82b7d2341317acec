#pragma once

#include <map>
#include <set>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/rational.hpp"

namespace planarmatch {

struct MaxFlowResult {
    Rat value;
    // The side of a minimum cut containing the source: everything still
    // reachable from it in the residual network.
    std::set<VertexId> sourceSide;
};

// Exact max-flow by shortest augmenting paths. Capacities are per edge,
// nonnegative, with missing edges treated as zero.
MaxFlowResult maxFlowMinCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                            VertexId s, VertexId t);

struct MinCutSide {
    Rat value;
    std::set<VertexId> side;
};

// The inclusion-minimal minimum r-v cut side containing v: the vertices from
// which v is reachable in the residual network of a maximum flow.
MinCutSide minimalMinCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                         VertexId r, VertexId v);

// Smallest vertex of si all of whose minimal min cuts to the rest of si
// cover at most half of si. One always exists.
VertexId centralVertex(const PlanarGraph& gPrime, const std::map<EdgeId, Rat>& cap,
                       const std::set<VertexId>& si);

struct GomoryHuTree {
    struct TreeEdge {
        int a = 0;
        int b = 0;
        Rat weight;
        // Witness pair: u in node a, v in node b, with min-cut value weight.
        VertexId u = 0;
        VertexId v = 0;
    };

    // Partition classes; singletons once construction finishes.
    std::vector<std::set<VertexId>> nodes;
    std::vector<TreeEdge> treeEdges;
    int rounds = 0;
};

// All-pairs min cuts of a connected graph in tree form, built by splitting
// every partition class at a central vertex each round, so class sizes halve
// and at most ceil(log2 |V|) rounds run.
GomoryHuTree gomoryHuTree(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap);

struct OddCut {
    std::set<VertexId> side;
    Rat weight;
};

// Minimum cut over odd vertex sets, read off the Gomory-Hu tree edges whose
// removal leaves odd sides. Requires an even vertex count.
OddCut minOddCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap);

}

#pragma once

#include <set>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/graph_algos.hpp"
#include "planarmatch/polytope.hpp"

namespace planarmatch {

// Greedy by ascending node id: a node joins the set unless a neighbor already
// did. Any maximal independent set works downstream; this one is canonical.
std::set<int> maximalIndependentSet(const AbstractGraph& g);

// Pairwise edge-disjoint faces of g, found by dropping dual vertices of
// degree above 24 and taking a maximal independent set in what remains.
// Faces whose boundary repeats an edge or a vertex are skipped too, so every
// returned face is a simple cycle. Requires g connected and free of degree-1
// vertices. The count guarantee additionally wants few degree-2 vertices,
// but a graph that misses that only yields fewer faces.
std::vector<Face> edgeDisjointFaces(const PlanarGraph& g);

struct TokenPairing {
    struct Pair {
        // Indices into the token list handed to treePairTokens. The path
        // runs from the first token's vertex to the second token's and is
        // empty when both sit on the same vertex.
        int first = 0;
        int second = 0;
        std::vector<EdgeId> path;
    };
    std::vector<Pair> pairs;
};

// Pairs up tokens sitting on the vertices of a tree so that the connecting
// tree paths are pairwise edge-disjoint. Tokens may repeat vertices. The
// graph must be a tree; the token count must be even (OddTokenCount).
TokenPairing treePairTokens(const PlanarGraph& tree,
                            const std::vector<VertexId>& tokens);

// Extracts pairwise edge-disjoint even walks from a preprocessed graph
// (connected, no degree-1 vertices).
// When at least half of the edge-disjoint faces are even they are returned
// directly as cycles; otherwise odd faces are paired over a spanning tree
// and joined into two-cycles-plus-path walks, keeping a maximal independent
// set of the short ones. Throws NoWalksFound when nothing survives.
std::vector<EvenWalk> findEvenWalks(const PlanarGraph& g);

}

#pragma once

#include <map>
#include <set>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/rational.hpp"

// Brute-force oracles used by the test suite and the acceptance harness.
// Everything here is exhaustive enumeration over small graphs, written
// independently of the algorithms under test; only the graph types are
// shared.
namespace planarmatch::oracle {

struct EnumerationReport {
    long long matchingCount = 0;
    long long minWeightCount = 0;
    long long optimalWeight = 0;
    // Number of minimum-weight perfect matchings through each edge.
    std::map<EdgeId, long long> perEdgeMinWeight;
    // Every perfect matching as a set of edge ids.
    std::vector<std::set<EdgeId>> matchings;
};

// Exhaustive backtracking over graphs with at most 20 vertices, otherwise
// TooLarge. The first form uses the weights stored on the graph; the second
// replaces them (edges missing from w count as weight 0).
EnumerationReport enumeratePerfectMatchings(const PlanarGraph& g);
EnumerationReport enumeratePerfectMatchings(const PlanarGraph& g,
                                            const std::map<EdgeId, long long>& w);

struct OddCutReport {
    Rat value;
    // The lexicographically smallest odd set achieving the minimum.
    std::set<VertexId> side;
};

// Minimum over all odd-cardinality proper subsets, at most 16 vertices.
OddCutReport bruteMinOddCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap);

struct PolytopeReport {
    bool degreesOk = false;
    bool nonnegative = false;
    Rat minOddCutValue;
    bool member = false;
    // Odd sets whose cut value is exactly 1 under x.
    std::vector<std::set<VertexId>> tightSets;
};

// Checks x against the perfect matching polytope constraints by exhausting
// odd sets, at most 16 vertices. Edges missing from x count as 0.
PolytopeReport brutePolytopeCheck(const std::map<EdgeId, Rat>& x, const PlanarGraph& g);

// True when m is a perfect matching of g.
bool validateMatching(const PlanarGraph& g, const std::set<EdgeId>& m);

}

#pragma once

#include <set>
#include <utility>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/graph_algos.hpp"
#include "planarmatch/pfaffian.hpp"
#include "planarmatch/polytope.hpp"
#include "planarmatch/rational.hpp"

namespace planarmatch {

// An odd vertex set whose cut carries exactly one unit of the ambient
// point x. The certificate stores that cut value so callers can recheck
// without recomputing it.
struct TightOddSet {
    std::set<VertexId> vertices;
    Rat certificate;
};

// Control-flow escape raised when uncrossing runs into a set whose
// preimage is already balanced: at least c1 and at most (1 - c1) of the
// original vertex count. The driver catches it and recurses on the two
// sides of that set directly instead of finishing the uncrossing pass.
struct EarlyExit {
    // Original vertices, the map f already applied.
    std::set<VertexId> viable;
};

// Tight odd sets with an edge joining i and j exactly when their
// intersection has odd size. Built from two internally disjoint families,
// no vertex lies in three of the sets and the graph is bipartite; the
// builder rejects inputs that break either property. Under those two, the
// size of the union of all node sets is congruent mod 2 to the node count
// plus the edge count, and the same holds for every sub-collection whose
// node sets nobody has modified since.
struct IntersectionParityGraph {
    std::vector<TightOddSet> nodes;
    AbstractGraph graph;
};

IntersectionParityGraph intersectionParityGraph(std::vector<TightOddSet> sets);

// The odd set blocking a rotation of the walk: the minimum odd cut S of
// y = x + epsilon * chi_W at epsilon = 1/(4 n m), where m counts the
// min-weight perfect matchings behind x. Returns S only after verifying
// x(delta(S)) = 1 and chi_W(delta(S)) != 0 exactly; throws NoViolation
// when a walk edge has left the support of x or when the minimum odd cut
// is not violated by the rotation, which happens when the walk is blocked
// by edge loss instead or rotated in the unblocked direction.
TightOddSet findBlockingOddSet(const PlanarGraph& g, const FractionalPoint& x,
                               const EvenWalk& walk, const Int& matchingCount);

// Divide-and-conquer uncrossing. Takes tight odd sets in any overlapping
// configuration, splits the list in half by ascending vertex set, recurses
// on the halves concurrently and merges with mergeUncross. The result is
// pairwise disjoint tight odd sets, each verified exactly, each with fewer
// than c1 * originalCount preimage vertices; inputs must already satisfy
// that same preimage bound. Throws EarlyExit when a balanced viable set
// shows up along the way; with several candidates the one from the lowest
// component id of the earliest merge wins, independent of worker count.
std::vector<TightOddSet> uncross(std::vector<TightOddSet> sets,
                                 const PlanarGraph& g, const FractionalPoint& x,
                                 const VertexMap& f, const Rat& c1);

// Merge step: both families must be internally pairwise disjoint. For
// every pair that meets in an even number of vertices the r side is
// subtracted from the c side, which leaves all intersections odd or
// empty; the removals never overlap because no vertex lies in two sets of
// one family. The surviving sets form an intersection parity graph whose
// components are processed in ascending order of smallest node index: a
// component of odd node-plus-edge count contributes the union of its
// sets, an even one is split by evenSplit into two covering pieces
// contributing the first union and the second union minus the first.
// Every candidate passes checkBalancedViable before it is kept, so the
// call either returns disjoint tight odd sets or throws EarlyExit.
std::vector<TightOddSet> mergeUncross(std::vector<TightOddSet> r,
                                      std::vector<TightOddSet> c,
                                      const PlanarGraph& g, const FractionalPoint& x,
                                      const VertexMap& f, const Rat& c1);

// Splits a connected component whose node count plus edge count is even
// into two connected induced subgraphs of odd count that together cover
// every node; the pieces may overlap. Works over the block-cut tree with
// one label per block. With three or more labeled blocks the two pieces
// are the sides of the tree edges flanking a most distant labeled pair;
// with exactly one, a seed of one vertex of even block degree, or of the
// two leading vertices of the last long ear, splits the block, and every
// other block attaches to the side holding its cut vertex. Throws
// BadParity when the count is odd; both pieces are validated before
// returning.
std::pair<std::set<int>, std::set<int>> evenSplit(const AbstractGraph& component);

// Guard run on every candidate sub-collection u (node indices into h)
// before its union may be emitted. Passes silently when the preimage of
// the union stays below c1 * originalCount. Otherwise the union, or a
// piece of it found by walking a connected prefix order until the
// preimage reaches 2 * c1 * originalCount and splitting once more if that
// prefix union has even size, is verified tight and odd and thrown as an
// EarlyExit.
void checkBalancedViable(const IntersectionParityGraph& h, const std::set<int>& u,
                         const PlanarGraph& g, const FractionalPoint& x,
                         const VertexMap& f, const Rat& c1);

}

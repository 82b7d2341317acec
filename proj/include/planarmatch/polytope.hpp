#pragma once

#include <map>
#include <set>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/pfaffian.hpp"
#include "planarmatch/rational.hpp"

namespace planarmatch {

enum class WalkKind {
    SimpleEvenCycle,
    TwoOddCyclesPlusPath,
};

// A closed even walk: either one simple cycle of even length, or two odd
// cycles joined by a path that the traversal covers twice (the path may be
// empty, which means the cycles share a vertex). edgeSequence is the full
// traversal, so path edges appear in it twice.
struct EvenWalk {
    WalkKind kind = WalkKind::SimpleEvenCycle;
    std::vector<EdgeId> edgeSequence;
    std::set<EdgeId> pathEdges;
};

// Signed indicator of a walk traversal. Edges the walk does not use are
// absent and count as zero.
struct AlternatingVector {
    std::map<EdgeId, int> coef;

    int at(EdgeId e) const {
        auto it = coef.find(e);
        return it == coef.end() ? 0 : it->second;
    }
};

// Sum of x over the edges with exactly one endpoint in s. Edges missing
// from x count as zero.
Rat cutValue(const PlanarGraph& g, const FractionalPoint& x,
             const std::set<VertexId>& s);

// Sum of x over the edges incident to v.
Rat degreeValue(const PlanarGraph& g, const FractionalPoint& x, VertexId v);

// chi_W: traversal position i (counted from 1) contributes (-1)^i to the
// edge at that position, so a path edge accumulates +-2 and every other
// walk edge +-1. Rejects sequences whose shape contradicts the declared
// kind: odd length, wrong multiplicities, or a path edge whose two visits
// cancel.
AlternatingVector alternatingVector(const EvenWalk& walk);

// Full structural check of a walk against its graph: edges exist, the
// sequence chains into a closed traversal, the first cycle closes after an
// odd prefix, the two path passes mirror each other, and a simple even
// cycle repeats no vertex.
void validateEvenWalk(const PlanarGraph& g, const EvenWalk& walk);

// <w, chi_W>, the alternating weight sum along the traversal. Edges missing
// from w weigh zero.
long long circulation(const std::map<EdgeId, long long>& w, const EvenWalk& walk);

// The rotation step size 1/(4*n*m) for a graph with n vertices and m
// min-weight perfect matchings. Every margin in the rotation lemma is at
// least 1/m, so this epsilon keeps all three conditions strict.
Rat rotationEpsilon(int n, const Int& m);

// y = x + epsilon * chi_W. Every walk edge must carry positive x value;
// the result may still violate polytope constraints when epsilon exceeds
// rotationEpsilon.
FractionalPoint rotate(const FractionalPoint& x, const EvenWalk& walk,
                       const Rat& epsilon);

enum class MembershipMode {
    // Enumerates all odd vertex subsets; limited to 16 vertices.
    Exhaustive,
    // Separates odd-set constraints with one minimum odd cut; needs an even
    // vertex count and scales to the full corpus.
    CutBased,
};

struct MembershipReport {
    bool member = false;
    bool degreesOk = false;
    bool nonnegative = false;
    bool oddCutsOk = false;
    // Witnesses for the violated constraint classes.
    std::vector<VertexId> degreeViolations;
    std::vector<EdgeId> negativeEdges;
    std::set<VertexId> violatedOddSet;
    Rat minOddCutValue;
    // Odd sets met with equality; filled in exhaustive mode only.
    std::vector<std::set<VertexId>> tightSets;
};

// Tests x against the perfect matching polytope of g: degree equalities,
// nonnegativity, and the odd-set cut constraints via the chosen mode. The
// odd-set stage runs only when x is nonnegative (cut capacities must be).
MembershipReport checkMembership(const PlanarGraph& g, const FractionalPoint& x,
                                 MembershipMode mode);

}

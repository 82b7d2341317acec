#pragma once

#include <map>
#include <utility>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/rational.hpp"

namespace planarmatch {

// Edge orientation making every face except the reference face (the first
// orbit that faceOrbits() lists) have an odd number of boundary-agreeing
// edges. Under such an orientation the determinant of the signed adjacency
// matrix is the squared matching polynomial.
struct PfaffianOrientation {
    // edge id -> (tail, head)
    std::map<EdgeId, std::pair<VertexId, VertexId>> direction;
};

// Kasteleyn-style orientation: orient a spanning tree arbitrarily, then fix
// the remaining edges walking the dual tree from the leaves in. Requires a
// connected graph.
PfaffianOrientation fktOrient(const PlanarGraph& g);

// True when every face except the reference face agrees with an odd number
// of its boundary edges.
bool checkFkt(const PlanarGraph& g, const PfaffianOrientation& o);

struct IntPolynomial {
    // degree -> coefficient, zero coefficients never stored.
    std::map<long long, Int> coeff;

    void add(long long degree, const Int& value);
    bool isZero() const { return coeff.empty(); }
    long long lowestDegree() const;
    long long highestDegree() const;
    Int at(long long degree) const;
    Int evaluate(const Int& point) const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

using PolyMatrix = std::vector<std::vector<IntPolynomial>>;

// Skew-symmetric signed adjacency matrix over y; rows and columns follow
// ascending vertex id. Entry (i,j) sums sign(e) * y^w(e) over all parallel
// edges between the two vertices. Weights must be nonnegative; edges absent
// from w count as weight 0.
PolyMatrix buildTutteMatrix(const PlanarGraph& g, const PfaffianOrientation& o,
                            const std::map<EdgeId, long long>& w);

// Exact determinant by evaluation at the integer points 1..D+1 followed by
// exact interpolation; evaluations run as independent parallel tasks.
IntPolynomial polyDeterminant(const PolyMatrix& b);

struct MatchingCounts {
    // Minimum perfect matching weight; -1 when no perfect matching exists.
    long long d = -1;
    // Number of minimum-weight perfect matchings.
    Int m{0};
    // Number of minimum-weight perfect matchings through each edge. Filled
    // by countAllEdges and avgPoint, empty from countMinWeight.
    std::map<EdgeId, Int> perEdge;
};

// d and m only. Handles disconnected graphs by multiplying component
// counts; negative weights are absorbed by the internal normalization.
MatchingCounts countMinWeight(const PlanarGraph& g, const std::map<EdgeId, long long>& w);

// Count of minimum-weight perfect matchings using edge e.
Int countPerEdge(const PlanarGraph& g, const std::map<EdgeId, long long>& w, EdgeId e);

// d, m and the full per-edge table in one pass.
MatchingCounts countAllEdges(const PlanarGraph& g, const std::map<EdgeId, long long>& w);

using FractionalPoint = std::map<EdgeId, Rat>;

// x_e = #(min-weight matchings through e) / #(min-weight matchings); the
// average of the minimum-weight face of the matching polytope. Throws
// NoPerfectMatching when the graph has none.
FractionalPoint avgPoint(const PlanarGraph& g, const std::map<EdgeId, long long>& w);

bool hasPerfectMatching(const PlanarGraph& g);

}

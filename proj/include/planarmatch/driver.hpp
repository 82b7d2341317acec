#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "planarmatch/graph.hpp"
#include "planarmatch/pfaffian.hpp"
#include "planarmatch/polytope.hpp"
#include "planarmatch/rational.hpp"
#include "planarmatch/uncross.hpp"

namespace planarmatch {

// Knobs of the matching pipeline. The two balance inequalities make the
// escape sets produced during preprocessing and uncrossing land inside
// [c1, 1-c1], and the base case must be able to swallow any graph the
// size guard can no longer split, hence baseCaseSize >= 1/c1.
struct AlgorithmConfig {
    Rat c1 = makeRat(1, Int(8));
    int baseCaseSize = 64;
    // Weight vectors passed to minWeightPerfectMatching may not exceed
    // |V| to this power.
    int weightExponent = 2;
    // Composite weight channel: when multiplier is nonzero, every
    // internal weight vector w is replaced by multiplier * base + w.
    // minWeightPerfectMatching fills these in; leave them alone for
    // plain existence runs.
    std::map<EdgeId, long long> compositeBase;
    long long compositeMultiplier = 0;
};

// Throws PreconditionViolated when the config violates its invariants:
// 0 < c1, 3*c1 <= 1 - c1, c1 + 1/2 < 1 - c1, baseCaseSize * c1 >= 1.
void validateConfig(const AlgorithmConfig& cfg);

// One pipeline phase of one run, for instrumentation. depth counts
// recursion levels from the root call, round counts pipeline iterations
// within one balanced viable set search.
struct PhaseRecord {
    std::string phase;
    int depth = 0;
    int round = 0;
    int edgesBefore = 0;
    int edgesAfter = 0;
    int verticesBefore = 0;
    int verticesAfter = 0;
    int walksFound = 0;
    int walksSurviving = 0;
    int contractions = 0;
};

struct MatchingResult {
    std::set<EdgeId> matching;
    int recursionDepth = 0;
    std::vector<PhaseRecord> depthProfile;
};

// Control-flow escape raised when no even walks can be extracted from the
// current shrunk graph. Carries the working graph and map so the caller
// can finish by counting on the small remainder and lifting the result.
struct FallbackRequired {
    PlanarGraph graph;
    VertexMap map;
};

struct PreprocessResult {
    PlanarGraph graph;
    VertexMap map;
    FractionalPoint point;
};

struct ReduceResult {
    PlanarGraph graph;
    VertexMap map;
    int walksFound = 0;
    int walksSurviving = 0;
    int edgesRemoved = 0;
    int contractions = 0;
};

// True when matching consists of edges of g covering every vertex exactly
// once.
bool isPerfectMatching(const PlanarGraph& g, const std::set<EdgeId>& matching);

// Divide-and-conquer matching search. Graphs with at most baseCaseSize
// vertices go straight to selfReduce; larger ones are split along a
// balanced viable set S: with weight 1 on the cut of S the average point
// concentrates on matchings crossing S once, the minimum-id cut edge with
// positive mass joins the matching, and the two endpoint-removed sides
// recurse concurrently. Throws NoPerfectMatching when the graph has none.
MatchingResult perfectMatching(const PlanarGraph& g0,
                               const AlgorithmConfig& cfg = {});

// Base case: repeatedly commit the minimum-id edge lying on some
// minimum-weight perfect matching and delete its endpoints. Returns a
// minimum-weight perfect matching; the assembled weight is checked against
// the count oracle's optimum. Callers are expected to keep inputs at base
// case size, the function itself only needs the counting to fit.
std::set<EdgeId> selfReduce(const PlanarGraph& g,
                            const std::map<EdgeId, long long>& w);

// Alternates preprocess and reduce on a shrinking copy of g0 until some
// vertex collects at least c1 * |V0| original vertices or one of the
// escape paths fires, and returns that preimage: an odd set of original
// vertices, balanced within [c1, 1-c1] and viable, meaning some perfect
// matching crosses its cut exactly once. Requires |V0| > baseCaseSize.
// Throws FallbackRequired when walk extraction runs dry before then.
// Appends one record per phase to profile when it is non-null.
std::set<VertexId> balancedViableSet(const PlanarGraph& g0,
                                     const AlgorithmConfig& cfg,
                                     std::vector<PhaseRecord>* profile = nullptr);

// One preprocessing pass: drop the edges the average point avoids, make
// the graph connected, then shrink degree-two runs while they dominate.
// The returned point is the average restricted to the surviving edges, a
// member of the result's matching polytope. Throws EarlyExit when a scan
// crosses the c1 threshold.
PreprocessResult preprocess(const PlanarGraph& g, const VertexMap& f,
                            const AlgorithmConfig& cfg);

// Glues the components of g into one: the small components plus one
// vertex of the largest form a chain of tight sets; the first prefix to
// reach c1 * |V0| escapes as an EarlyExit, otherwise the whole chain is
// contracted into a single vertex. x must be the average point that
// produced g's edge support.
PreprocessResult makeConnected(PlanarGraph g, VertexMap f, FractionalPoint x,
                               const AlgorithmConfig& cfg);

// While more than half of the vertices have degree two, scans maximal
// degree-two runs in ascending order of their smallest vertex: prefixes
// of a run alternate tight odd sets, the first one to reach c1 * |V0|
// escapes as an EarlyExit, and otherwise the longest usable prefix is
// contracted. Runs that admit no odd prefix beyond a single vertex are
// left alone; the loop stops when only those remain.
PreprocessResult shrinkDegreeTwos(PlanarGraph g, VertexMap f,
                                  FractionalPoint x,
                                  const AlgorithmConfig& cfg);

// One reduction round on a preprocessed graph: extract even walks, put
// weight 1 on each walk's first edge, recompute the average point, drop
// the edges it avoids, and contract the disjoint odd sets blocking the
// walks that kept their support. The edge count strictly decreases.
// Throws FallbackRequired when no walks exist and EarlyExit when a
// blocking set is already balanced.
ReduceResult reduce(const PlanarGraph& g, const VertexMap& f,
                    const AlgorithmConfig& cfg);

// Blocking sets of the given walks, uncrossed into a pairwise disjoint
// family of verified tight odd sets, each below the c1 preimage bound.
// Walks must carry their full edge support in x; matchingCount is the
// matching count behind x and fixes the rotation radius. Sets whose
// preimage exceeds half of |V0| are complemented first; any set landing
// in [c1, 1/2] escapes as an EarlyExit.
std::vector<TightOddSet> disjointOddSets(const PlanarGraph& g,
                                         const VertexMap& f,
                                         const FractionalPoint& x,
                                         const std::vector<EvenWalk>& walks,
                                         const Int& matchingCount,
                                         const AlgorithmConfig& cfg);

// Minimum-weight variant: every internal weight vector w is replaced by
// the composite |V0| * W + w, which never carries between the two scales
// because any matching collects at most |V0|/2 internal weight. Weights
// must be nonnegative and at most |V0|^weightExponent per edge, and every
// weighted edge must exist. Returns a perfect matching of minimum total
// W-weight.
MatchingResult minWeightPerfectMatching(const PlanarGraph& g0,
                                        const std::map<EdgeId, long long>& weights,
                                        const AlgorithmConfig& cfg = {});

}

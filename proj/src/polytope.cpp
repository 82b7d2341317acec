#include "planarmatch/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "planarmatch/cuts.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/oracle.hpp"

namespace planarmatch {

namespace {

Rat valueAt(const FractionalPoint& x, EdgeId e) {
    auto it = x.find(e);
    return it == x.end() ? Rat(0) : it->second;
}

// Occurrence counts with the multiplicity rules of the declared kind
// enforced: path edges twice, everything else once.
std::map<EdgeId, int> walkMultiplicities(const EvenWalk& walk) {
    require(!walk.edgeSequence.empty(), Errc::MalformedWalk, "walk is empty");
    require(walk.edgeSequence.size() % 2 == 0, Errc::MalformedWalk,
            "walk length is odd");
    if (walk.kind == WalkKind::SimpleEvenCycle) {
        require(walk.pathEdges.empty(), Errc::MalformedWalk,
                "a simple cycle has no path edges");
    }
    std::map<EdgeId, int> count;
    for (EdgeId e : walk.edgeSequence) {
        ++count[e];
    }
    for (const auto& [e, c] : count) {
        const int expected = walk.pathEdges.count(e) != 0 ? 2 : 1;
        require(c == expected, Errc::MalformedWalk,
                "edge multiplicity contradicts the walk kind");
    }
    for (EdgeId e : walk.pathEdges) {
        require(count.count(e) != 0, Errc::MalformedWalk,
                "path edge missing from the traversal");
    }
    return count;
}

// The vertex chain of a closed traversal: chain[i] is the position after i
// edges, chain[0] == chain[k]. The first edge can be walked two ways; with
// loops excluded every later step is forced.
std::vector<VertexId> traversalChain(const PlanarGraph& g, const EvenWalk& walk) {
    for (EdgeId e : walk.edgeSequence) {
        require(g.hasEdge(e), Errc::MalformedWalk, "walk uses an unknown edge");
    }
    const Edge& head = g.edge(walk.edgeSequence.front());
    for (VertexId start : {head.u, head.v}) {
        std::vector<VertexId> chain{start};
        bool ok = true;
        for (EdgeId e : walk.edgeSequence) {
            const Edge& rec = g.edge(e);
            if (!rec.touches(chain.back())) {
                ok = false;
                break;
            }
            chain.push_back(rec.other(chain.back()));
        }
        if (ok && chain.back() == start) {
            return chain;
        }
    }
    fail(Errc::MalformedWalk, "edge sequence is not a closed walk");
}

}

Rat cutValue(const PlanarGraph& g, const FractionalPoint& x,
             const std::set<VertexId>& s) {
    Rat total;
    for (const auto& [id, e] : g.edges()) {
        if (s.count(e.u) != s.count(e.v)) {
            total += valueAt(x, id);
        }
    }
    return total;
}

Rat degreeValue(const PlanarGraph& g, const FractionalPoint& x, VertexId v) {
    Rat total;
    for (EdgeId id : g.incidentEdges(v)) {
        total += valueAt(x, id);
    }
    return total;
}

AlternatingVector alternatingVector(const EvenWalk& walk) {
    walkMultiplicities(walk);
    AlternatingVector chi;
    for (size_t i = 0; i < walk.edgeSequence.size(); ++i) {
        chi.coef[walk.edgeSequence[i]] += i % 2 == 0 ? -1 : 1;
    }
    for (const auto& [e, c] : chi.coef) {
        const int magnitude = walk.pathEdges.count(e) != 0 ? 2 : 1;
        require(c == magnitude || c == -magnitude, Errc::MalformedWalk,
                "path visits cancel instead of doubling");
    }
    return chi;
}

void validateEvenWalk(const PlanarGraph& g, const EvenWalk& walk) {
    alternatingVector(walk);
    const std::vector<VertexId> chain = traversalChain(g, walk);
    const size_t k = walk.edgeSequence.size();

    if (walk.kind == WalkKind::SimpleEvenCycle) {
        std::set<VertexId> seen(chain.begin(), chain.end() - 1);
        require(seen.size() == k, Errc::MalformedWalk,
                "simple cycle revisits a vertex");
        return;
    }

    // Locate the first cycle: it ends where the path starts, or at the
    // first return to the start when the path is empty.
    const size_t p = walk.pathEdges.size();
    size_t c1 = 0;
    if (p == 0) {
        for (size_t i = 1; i < k; ++i) {
            if (chain[i] == chain[0]) {
                c1 = i;
                break;
            }
        }
        require(c1 != 0, Errc::MalformedWalk,
                "first cycle never returns to its anchor");
    } else {
        while (c1 < k && walk.pathEdges.count(walk.edgeSequence[c1]) == 0) {
            ++c1;
        }
    }
    require(c1 % 2 == 1, Errc::MalformedWalk, "first cycle has even length");
    require(c1 + 2 * p < k, Errc::MalformedWalk, "walk has no second cycle");
    const size_t c2 = k - c1 - 2 * p;
    require(chain[c1] == chain[0], Errc::MalformedWalk,
            "first cycle does not close");
    require(chain[c1 + p + c2] == chain[c1 + p], Errc::MalformedWalk,
            "second cycle does not close");

    // Both path passes cover the same simple path, second one reversed.
    std::vector<EdgeId> out(walk.edgeSequence.begin() + c1,
                            walk.edgeSequence.begin() + c1 + p);
    std::vector<EdgeId> back(walk.edgeSequence.begin() + c1 + p + c2,
                             walk.edgeSequence.end());
    require(std::set<EdgeId>(out.begin(), out.end()).size() == p,
            Errc::MalformedWalk, "path repeats an edge");
    std::reverse(back.begin(), back.end());
    require(out == back, Errc::MalformedWalk,
            "return pass is not the path reversed");
    for (size_t i = c1 + p; i < c1 + p + c2; ++i) {
        require(walk.pathEdges.count(walk.edgeSequence[i]) == 0,
                Errc::MalformedWalk, "path edge inside the second cycle");
    }
}

long long circulation(const std::map<EdgeId, long long>& w, const EvenWalk& walk) {
    long long total = 0;
    for (size_t i = 0; i < walk.edgeSequence.size(); ++i) {
        auto it = w.find(walk.edgeSequence[i]);
        if (it == w.end()) {
            continue;
        }
        total += i % 2 == 0 ? -it->second : it->second;
    }
    return total;
}

Rat rotationEpsilon(int n, const Int& m) {
    require(n >= 2, Errc::PreconditionViolated,
            "rotation needs at least two vertices");
    require(m >= 1, Errc::PreconditionViolated,
            "rotation needs a nonzero matching count");
    return makeRat(1, Int(4 * static_cast<long>(n)) * m);
}

FractionalPoint rotate(const FractionalPoint& x, const EvenWalk& walk,
                       const Rat& epsilon) {
    const AlternatingVector chi = alternatingVector(walk);
    for (const auto& [e, c] : chi.coef) {
        (void)c;
        require(valueAt(x, e) > 0, Errc::EdgeOutsideSupport,
                "walk leaves the support of the point");
    }
    FractionalPoint y = x;
    for (const auto& [e, c] : chi.coef) {
        y[e] += epsilon * c;
    }
    return y;
}

MembershipReport checkMembership(const PlanarGraph& g, const FractionalPoint& x,
                                 MembershipMode mode) {
    for (const auto& [e, value] : x) {
        (void)value;
        require(g.hasEdge(e), Errc::PreconditionViolated,
                "point names an edge outside the graph");
    }
    MembershipReport report;

    report.nonnegative = true;
    for (const auto& [e, value] : x) {
        if (value < 0) {
            report.nonnegative = false;
            report.negativeEdges.push_back(e);
        }
    }
    report.degreesOk = true;
    for (VertexId v : g.vertexIds()) {
        if (degreeValue(g, x, v) != 1) {
            report.degreesOk = false;
            report.degreeViolations.push_back(v);
        }
    }

    if (report.nonnegative) {
        if (mode == MembershipMode::Exhaustive) {
            const auto brute = oracle::brutePolytopeCheck(x, g);
            report.minOddCutValue = brute.minOddCutValue;
            report.oddCutsOk = brute.minOddCutValue >= 1;
            report.tightSets = brute.tightSets;
            if (!report.oddCutsOk) {
                report.violatedOddSet = oracle::bruteMinOddCut(g, x).side;
            }
        } else {
            const OddCut cut = minOddCut(g, x);
            report.minOddCutValue = cut.weight;
            report.oddCutsOk = cut.weight >= 1;
            if (!report.oddCutsOk) {
                report.violatedOddSet = cut.side;
            }
        }
    }

    report.member = report.degreesOk && report.nonnegative && report.oddCutsOk;
    return report;
}

}

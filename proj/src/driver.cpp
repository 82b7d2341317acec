#include "planarmatch/driver.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "planarmatch/cuts.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/graph_algos.hpp"
#include "planarmatch/parallel.hpp"
#include "planarmatch/walks.hpp"

namespace planarmatch {

namespace {

Rat ratOf(long long v) { return Rat(Int(static_cast<long>(v))); }

bool atLeastFraction(long long count, const Rat& frac, long long total) {
    return ratOf(count) >= frac * ratOf(total);
}

bool withinBalanceBand(long long count, const Rat& c1, long long total) {
    return atLeastFraction(count, c1, total) &&
           ratOf(count) <= (Rat(1) - c1) * ratOf(total);
}

// Internal weight vectors are 0/1, so with a nonzero multiplier the two
// scales never mix: a matching collects at most |V|/2 internal weight.
std::map<EdgeId, long long> compositeWeights(
    const PlanarGraph& g, const AlgorithmConfig& cfg,
    const std::map<EdgeId, long long>& internal) {
    if (cfg.compositeMultiplier == 0) return internal;
    std::map<EdgeId, long long> out;
    for (EdgeId e : g.edgeIds()) {
        long long c = 0;
        if (auto it = internal.find(e); it != internal.end()) c = it->second;
        if (auto it = cfg.compositeBase.find(e); it != cfg.compositeBase.end()) {
            c += cfg.compositeMultiplier * it->second;
        }
        if (c != 0) out[e] = c;
    }
    return out;
}

FractionalPoint restrictPoint(const FractionalPoint& x, const PlanarGraph& g) {
    FractionalPoint out;
    for (const auto& [e, value] : x) {
        if (g.hasEdge(e)) out[e] = value;
    }
    return out;
}

struct AveragedFace {
    FractionalPoint x;
    Int m{0};
    long long d = -1;
};

// Average of the minimum-weight perfect matchings, with the count kept
// alongside because rotations need it for their radius.
AveragedFace averageFace(const PlanarGraph& g,
                         const std::map<EdgeId, long long>& w) {
    MatchingCounts counts = countAllEdges(g, w);
    require(counts.d >= 0, Errc::NoPerfectMatching,
            "graph has no perfect matching");
    AveragedFace out;
    out.m = counts.m;
    out.d = counts.d;
    for (EdgeId e : g.edgeIds()) {
        auto it = counts.perEdge.find(e);
        out.x[e] = it == counts.perEdge.end() ? Rat(0)
                                              : makeRat(it->second, counts.m);
    }
    return out;
}

std::set<EdgeId> cutEdges(const PlanarGraph& g, const std::set<VertexId>& s) {
    std::set<EdgeId> out;
    for (const auto& [id, e] : g.edges()) {
        if (s.count(e.u) != s.count(e.v)) out.insert(id);
    }
    return out;
}

std::set<VertexId> originalsOf(const VertexMap& f,
                               const std::set<VertexId>& current) {
    std::set<VertexId> out;
    for (VertexId v : current) {
        std::set<VertexId> pre = f.preimage(v);
        out.insert(pre.begin(), pre.end());
    }
    return out;
}

void requireTight(const PlanarGraph& g, const FractionalPoint& x,
                  const std::set<VertexId>& s, const char* context) {
    require(s.size() % 2 == 1, Errc::InternalError, context);
    require(cutValue(g, x, s) == Rat(1), Errc::InternalError, context);
}

struct Shrunk {
    PlanarGraph graph;
    VertexMap map;
    FractionalPoint point;
    VertexId merged = 0;
};

// Contraction plus the membership bookkeeping: the restricted point must
// satisfy the merged vertex's degree equality, which is exactly the former
// odd set constraint of s holding with equality.
Shrunk contractTight(const PlanarGraph& g, const VertexMap& f,
                     const FractionalPoint& x, const std::set<VertexId>& s) {
    ContractionResult r = contractSet(g, s, f);
    FractionalPoint nx = restrictPoint(x, r.graph);
    require(degreeValue(r.graph, nx, r.mergedVertex) == Rat(1),
            Errc::InternalError, "contracted point left the matching polytope");
    return {std::move(r.graph), std::move(r.map), std::move(nx),
            r.mergedVertex};
}

// Minimum-id vertex whose preimage has reached the c1 share, if any.
std::optional<VertexId> oversizedVertex(const PlanarGraph& g,
                                        const VertexMap& f, const Rat& c1,
                                        long long n0) {
    for (VertexId v : g.vertexIds()) {
        if (atLeastFraction(f.preimageCount({v}), c1, n0)) return v;
    }
    return std::nullopt;
}

void throwEscape(const PlanarGraph& g, const FractionalPoint& x,
                 const VertexMap& f, const std::set<VertexId>& current,
                 const char* context) {
    requireTight(g, x, current, context);
    std::set<VertexId> viable = originalsOf(f, current);
    require(viable.size() % 2 == 1, Errc::InternalError, context);
    throw EarlyExit{std::move(viable)};
}

// A maximal run of degree-two vertices. front/back are the flanking
// vertices of other degree; they coincide for a run that leaves and
// re-enters the same vertex, and a run closing on itself without any
// anchor is a whole cycle component.
struct Chain {
    std::vector<VertexId> interior;
    VertexId front = 0;
    VertexId back = 0;
    bool cycle = false;
};

EdgeId otherIncident(const PlanarGraph& g, VertexId v, EdgeId via) {
    const std::vector<EdgeId> inc = g.incidentEdges(v);
    require(inc.size() == 2, Errc::InternalError,
            "degree-two walk stepped onto a wrong-degree vertex");
    return inc[0] == via ? inc[1] : inc[0];
}

std::vector<Chain> degreeTwoChains(const PlanarGraph& g) {
    std::vector<Chain> out;
    std::set<VertexId> used;
    for (VertexId start : g.vertexIds()) {
        if (g.degree(start) != 2 || used.count(start)) continue;
        const std::vector<EdgeId> inc = g.incidentEdges(start);
        // Walk one direction to its end: an anchor or back to the start.
        auto follow = [&](EdgeId via, std::vector<VertexId>* run,
                          VertexId* anchor) {
            VertexId cur = start;
            while (true) {
                VertexId nxt = g.edge(via).other(cur);
                if (nxt == start) return true;
                if (g.degree(nxt) != 2) {
                    *anchor = nxt;
                    return false;
                }
                run->push_back(nxt);
                via = otherIncident(g, nxt, via);
                cur = nxt;
            }
        };
        Chain chain;
        std::vector<VertexId> fwd;
        std::vector<VertexId> bwd;
        VertexId anchorFwd = 0;
        VertexId anchorBwd = 0;
        if (follow(inc[1], &fwd, &anchorFwd)) {
            // Whole component is a cycle: start at its smallest vertex
            // and head for the smaller neighbor.
            chain.cycle = true;
            std::vector<VertexId> loop = {start};
            loop.insert(loop.end(), fwd.begin(), fwd.end());
            auto at = std::min_element(loop.begin(), loop.end());
            std::rotate(loop.begin(), at, loop.end());
            if (loop.size() > 2 && loop[1] > loop.back()) {
                std::reverse(loop.begin() + 1, loop.end());
            }
            chain.interior = std::move(loop);
        } else {
            follow(inc[0], &bwd, &anchorBwd);
            chain.interior.assign(bwd.rbegin(), bwd.rend());
            chain.interior.push_back(start);
            chain.interior.insert(chain.interior.end(), fwd.begin(), fwd.end());
            chain.front = anchorBwd;
            chain.back = anchorFwd;
            if (chain.interior.front() > chain.interior.back()) {
                std::reverse(chain.interior.begin(), chain.interior.end());
                std::swap(chain.front, chain.back);
            }
        }
        used.insert(chain.interior.begin(), chain.interior.end());
        out.push_back(std::move(chain));
    }
    return out;
}

// Scans the even prefixes of the run for an escape and otherwise names
// the set to contract. Even prefixes are tight odd sets by the
// alternation of x along the run; a run that re-enters its own anchor
// keeps its last interior vertex out because the prefix closing the loop
// is not tight. Returns nothing when the run admits no useful prefix.
std::optional<std::set<VertexId>> chainAction(const Chain& chain,
                                              const PlanarGraph& g,
                                              const VertexMap& f,
                                              const FractionalPoint& x,
                                              const AlgorithmConfig& cfg,
                                              long long n0) {
    std::vector<VertexId> seq;
    int scanMax = 0;
    int shrinkIndex = -1;
    const int k = static_cast<int>(chain.interior.size());
    if (chain.cycle) {
        seq = chain.interior;
        scanMax = k - 2;
        if (scanMax % 2 != 0) --scanMax;
    } else if (chain.front == chain.back) {
        seq.push_back(chain.front);
        seq.insert(seq.end(), chain.interior.begin(), chain.interior.end());
        scanMax = k - 1;
        if (scanMax % 2 != 0) --scanMax;
        if (scanMax >= 2) shrinkIndex = scanMax;
    } else {
        seq.push_back(chain.front);
        seq.insert(seq.end(), chain.interior.begin(), chain.interior.end());
        seq.push_back(chain.back);
        scanMax = k % 2 == 0 ? k : k - 1;
        shrinkIndex = k % 2 == 0 ? k : k + 1;
    }

    std::set<VertexId> prefix;
    long long count = 0;
    for (int i = 0; i <= scanMax; ++i) {
        prefix.insert(seq[i]);
        count += f.preimageCount({seq[i]});
        if (i % 2 != 0) continue;
        if (atLeastFraction(count, cfg.c1, n0)) {
            std::set<VertexId> hit(seq.begin(), seq.begin() + i + 1);
            throwEscape(g, x, f, hit, "degree-two escape set failed its check");
        }
    }
    // A cycle component always crosses the threshold: its vertices are
    // the whole graph, so the prefixes sweep past c1 * n0 before the
    // final vertex.
    require(!chain.cycle, Errc::InternalError,
            "cycle scan ran past the escape threshold");
    if (shrinkIndex < 0) return std::nullopt;
    std::set<VertexId> target(seq.begin(), seq.begin() + shrinkIndex + 1);
    requireTight(g, x, target, "degree-two prefix lost its tightness");
    return target;
}

long long degreeTwoCount(const PlanarGraph& g) {
    long long n = 0;
    for (VertexId v : g.vertexIds()) {
        if (g.degree(v) == 2) ++n;
    }
    return n;
}

std::set<EdgeId> walkEdgeSet(const EvenWalk& walk) {
    return {walk.edgeSequence.begin(), walk.edgeSequence.end()};
}

}  // namespace

void validateConfig(const AlgorithmConfig& cfg) {
    require(cfg.c1 > Rat(0) && cfg.c1 < Rat(1), Errc::PreconditionViolated,
            "c1 must lie strictly between 0 and 1");
    require(Rat(3) * cfg.c1 <= Rat(1) - cfg.c1, Errc::PreconditionViolated,
            "escape bands need 3 * c1 <= 1 - c1");
    require(cfg.c1 + makeRat(1, Int(2)) < Rat(1) - cfg.c1,
            Errc::PreconditionViolated,
            "component absorption needs c1 + 1/2 < 1 - c1");
    require(ratOf(cfg.baseCaseSize) * cfg.c1 >= Rat(1),
            Errc::PreconditionViolated,
            "base case must cover 1/c1 vertices");
    require(cfg.weightExponent >= 1, Errc::PreconditionViolated,
            "weight exponent must be positive");
    require(cfg.compositeMultiplier >= 0, Errc::PreconditionViolated,
            "weight multiplier cannot be negative");
}

bool isPerfectMatching(const PlanarGraph& g, const std::set<EdgeId>& matching) {
    std::set<VertexId> covered;
    for (EdgeId e : matching) {
        if (!g.hasEdge(e)) return false;
        const Edge& edge = g.edge(e);
        if (!covered.insert(edge.u).second) return false;
        if (!covered.insert(edge.v).second) return false;
    }
    return covered.size() == static_cast<std::size_t>(g.vertexCount());
}

std::set<EdgeId> selfReduce(const PlanarGraph& g0,
                            const std::map<EdgeId, long long>& w) {
    std::set<EdgeId> matching;
    if (g0.vertexCount() == 0) return matching;
    PlanarGraph g = g0;
    MatchingCounts counts = countAllEdges(g, w);
    require(counts.d >= 0, Errc::NoPerfectMatching,
            "graph has no perfect matching");
    const long long target = counts.d;
    long long spent = 0;
    while (g.vertexCount() > 0) {
        EdgeId pick = 0;
        bool found = false;
        for (EdgeId e : g.edgeIds()) {
            auto it = counts.perEdge.find(e);
            if (it != counts.perEdge.end() && it->second > 0) {
                pick = e;
                found = true;
                break;
            }
        }
        require(found, Errc::InternalError, "counting offered no usable edge");
        matching.insert(pick);
        if (auto it = w.find(pick); it != w.end()) spent += it->second;
        const Edge edge = g.edge(pick);
        g = g.withoutVertices({edge.u, edge.v});
        if (g.vertexCount() == 0) break;
        counts = countAllEdges(g, w);
        require(counts.d >= 0, Errc::InternalError,
                "matching extension disappeared mid-assembly");
    }
    require(spent == target, Errc::InternalError,
            "assembled matching misses the optimal weight");
    return matching;
}

PreprocessResult makeConnected(PlanarGraph g, VertexMap f, FractionalPoint x,
                               const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    const long long n0 = f.originalCount();
    std::vector<std::set<VertexId>> comps = connectedComponents(g);
    if (comps.size() <= 1) {
        return {std::move(g), std::move(f), std::move(x)};
    }
    std::sort(comps.begin(), comps.end(),
              [&](const std::set<VertexId>& a, const std::set<VertexId>& b) {
                  const long long ca = f.preimageCount(a);
                  const long long cb = f.preimageCount(b);
                  if (ca != cb) return ca < cb;
                  return *a.begin() < *b.begin();
              });
    // One vertex of the largest component plus growing unions of the
    // small ones: each prefix cuts exactly the chosen vertex's edges.
    std::set<VertexId> s{*comps.back().begin()};
    long long count = f.preimageCount(s);
    for (std::size_t j = 0; j + 1 < comps.size(); ++j) {
        s.insert(comps[j].begin(), comps[j].end());
        count += f.preimageCount(comps[j]);
        if (atLeastFraction(count, cfg.c1, n0)) {
            throwEscape(g, x, f, s, "component escape set failed its check");
        }
    }
    requireTight(g, x, s, "component chain lost its tightness");
    Shrunk sh = contractTight(g, f, x, s);
    return {std::move(sh.graph), std::move(sh.map), std::move(sh.point)};
}

PreprocessResult shrinkDegreeTwos(PlanarGraph g, VertexMap f,
                                  FractionalPoint x,
                                  const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    const long long n0 = f.originalCount();
    while (2 * degreeTwoCount(g) > g.vertexCount()) {
        bool progressed = false;
        for (const Chain& chain : degreeTwoChains(g)) {
            std::optional<std::set<VertexId>> target =
                chainAction(chain, g, f, x, cfg, n0);
            if (!target) continue;
            Shrunk sh = contractTight(g, f, x, *target);
            g = std::move(sh.graph);
            f = std::move(sh.map);
            x = std::move(sh.point);
            progressed = true;
            break;
        }
        if (!progressed) break;
    }
    return {std::move(g), std::move(f), std::move(x)};
}

PreprocessResult preprocess(const PlanarGraph& g, const VertexMap& f,
                            const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    require(g.vertexCount() > 0, Errc::PreconditionViolated,
            "preprocess needs a nonempty graph");
    AveragedFace avg = averageFace(g, compositeWeights(g, cfg, {}));
    std::set<EdgeId> drop;
    for (const auto& [e, value] : avg.x) {
        if (value == Rat(0)) drop.insert(e);
    }
    PlanarGraph support = g.withoutEdges(drop);
    FractionalPoint x = restrictPoint(avg.x, support);
    PreprocessResult r = makeConnected(std::move(support), f, std::move(x), cfg);
    r = shrinkDegreeTwos(std::move(r.graph), std::move(r.map),
                         std::move(r.point), cfg);
    for (VertexId v : r.graph.vertexIds()) {
        require(r.graph.degree(v) != 1, Errc::InternalError,
                "degree-one vertex survived preprocessing");
    }
    require(connectedComponents(r.graph).size() == 1, Errc::InternalError,
            "preprocessing left the graph disconnected");
    return r;
}

std::vector<TightOddSet> disjointOddSets(const PlanarGraph& g,
                                         const VertexMap& f,
                                         const FractionalPoint& x,
                                         const std::vector<EvenWalk>& walks,
                                         const Int& matchingCount,
                                         const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    if (walks.empty()) return {};
    const long long n0 = f.originalCount();
    const bool weighted = cfg.compositeMultiplier != 0;
    std::vector<std::optional<TightOddSet>> found(walks.size());
    std::vector<char> unresolved(walks.size(), 0);
    parallelFor(walks.size(), [&](std::size_t i) {
        EvenWalk oriented = walks[i];
        if (weighted) {
            // Rotate in the direction that lowers the composite cost;
            // the internal share contributes -1 through the first edge.
            const long long circ =
                cfg.compositeMultiplier *
                    circulation(cfg.compositeBase, walks[i]) -
                1;
            require(circ != 0, Errc::InternalError,
                    "rotation direction is undetermined");
            if (circ > 0) {
                if (oriented.kind != WalkKind::SimpleEvenCycle) {
                    unresolved[i] = 1;
                    return;
                }
                std::reverse(oriented.edgeSequence.begin(),
                             oriented.edgeSequence.end());
            }
        }
        try {
            found[i] = findBlockingOddSet(g, x, oriented, matchingCount);
        } catch (const Error& e) {
            if (e.code() != Errc::NoViolation) throw;
            unresolved[i] = 1;
        }
    });
    std::vector<TightOddSet> sets;
    std::set<VertexId> everyone;
    for (VertexId v : g.vertexIds()) everyone.insert(v);
    for (std::size_t i = 0; i < walks.size(); ++i) {
        if (unresolved[i]) {
            // With plain weights the rotation provably leaves the
            // minimum-weight face, so a missing violation is a bug.
            require(weighted, Errc::InternalError,
                    "surviving walk has no blocking set");
            continue;
        }
        TightOddSet s = std::move(*found[i]);
        long long count = f.preimageCount(s.vertices);
        if (2 * count > n0) {
            std::set<VertexId> complement;
            std::set_difference(everyone.begin(), everyone.end(),
                                s.vertices.begin(), s.vertices.end(),
                                std::inserter(complement, complement.end()));
            s.vertices = std::move(complement);
            s.certificate = cutValue(g, x, s.vertices);
            requireTight(g, x, s.vertices,
                         "complement of a blocking set is not tight odd");
            count = f.preimageCount(s.vertices);
        }
        if (atLeastFraction(count, cfg.c1, n0)) {
            throwEscape(g, x, f, s.vertices,
                        "balanced blocking set failed its check");
        }
        const bool duplicate =
            std::any_of(sets.begin(), sets.end(), [&](const TightOddSet& t) {
                return t.vertices == s.vertices;
            });
        if (!duplicate) sets.push_back(std::move(s));
    }
    if (sets.empty()) return {};
    return uncross(std::move(sets), g, x, f, cfg.c1);
}

ReduceResult reduce(const PlanarGraph& g0, const VertexMap& f0,
                    const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    const bool weighted = cfg.compositeMultiplier != 0;
    std::vector<EvenWalk> walks;
    try {
        walks = findEvenWalks(g0);
    } catch (const Error& e) {
        if (e.code() == Errc::NoWalksFound) throw FallbackRequired{g0, f0};
        throw;
    }
    std::map<EdgeId, long long> w;
    for (const EvenWalk& walk : walks) w[walk.edgeSequence.front()] = 1;
    AveragedFace avg = averageFace(g0, compositeWeights(g0, cfg, w));
    std::set<EdgeId> drop;
    for (const auto& [e, value] : avg.x) {
        if (value == Rat(0)) drop.insert(e);
    }
    PlanarGraph g = g0.withoutEdges(drop);
    FractionalPoint x = restrictPoint(avg.x, g);
    std::vector<EvenWalk> survivors;
    for (const EvenWalk& walk : walks) {
        const std::set<EdgeId> edges = walkEdgeSet(walk);
        if (std::all_of(edges.begin(), edges.end(),
                        [&](EdgeId e) { return g.hasEdge(e); })) {
            // The walks are edge-disjoint, so each one meets the weight
            // vector in its own first edge alone.
            require(circulation(w, walk) == -1, Errc::InternalError,
                    "surviving walk crosses another walk's anchor edge");
            survivors.push_back(walk);
        }
    }
    ReduceResult out;
    out.walksFound = static_cast<int>(walks.size());
    out.walksSurviving = static_cast<int>(survivors.size());
    VertexMap f = f0;
    if (!survivors.empty()) {
        std::vector<TightOddSet> sets =
            disjointOddSets(g, f, x, survivors, avg.m, cfg);
        if (!weighted) {
            for (const EvenWalk& walk : survivors) {
                const bool contained = std::any_of(
                    sets.begin(), sets.end(), [&](const TightOddSet& s) {
                        for (EdgeId e : walkEdgeSet(walk)) {
                            const Edge& edge = g.edge(e);
                            if (s.vertices.count(edge.u) &&
                                s.vertices.count(edge.v)) {
                                return true;
                            }
                        }
                        return false;
                    });
                require(contained, Errc::InternalError,
                        "surviving walk has no edge inside the contracted family");
            }
        }
        for (const TightOddSet& s : sets) {
            Shrunk sh = contractTight(g, f, x, s.vertices);
            g = std::move(sh.graph);
            f = std::move(sh.map);
            x = std::move(sh.point);
            ++out.contractions;
        }
    }
    out.edgesRemoved = g0.edgeCount() - g.edgeCount();
    if (weighted) {
        // Composite weights can strand every walk; counting on the
        // unchanged graph still finishes the job.
        if (out.edgesRemoved == 0) throw FallbackRequired{g0, f0};
    } else {
        require(out.edgesRemoved >= out.walksFound, Errc::InternalError,
                "reduction removed fewer edges than walks");
    }
    out.graph = std::move(g);
    out.map = std::move(f);
    return out;
}

std::set<VertexId> balancedViableSet(const PlanarGraph& g0,
                                     const AlgorithmConfig& cfg,
                                     std::vector<PhaseRecord>* profile) {
    validateConfig(cfg);
    require(g0.vertexCount() > cfg.baseCaseSize, Errc::PreconditionViolated,
            "balanced viable search needs more vertices than the base case");
    const long long n0 = g0.vertexCount();
    auto finish = [&](std::set<VertexId> s) {
        require(withinBalanceBand(static_cast<long long>(s.size()), cfg.c1, n0),
                Errc::InternalError, "viable set misses the balance band");
        require(s.size() % 2 == 1, Errc::InternalError,
                "viable set has even size");
        return s;
    };
    auto record = [&](std::string phase, int round, const PlanarGraph& before,
                      const PlanarGraph& after, int walksFound,
                      int walksSurviving, int contractions) {
        if (!profile) return;
        PhaseRecord r;
        r.phase = std::move(phase);
        r.round = round;
        r.edgesBefore = before.edgeCount();
        r.edgesAfter = after.edgeCount();
        r.verticesBefore = before.vertexCount();
        r.verticesAfter = after.vertexCount();
        r.walksFound = walksFound;
        r.walksSurviving = walksSurviving;
        r.contractions = contractions;
        profile->push_back(std::move(r));
    };
    PlanarGraph g = g0;
    VertexMap f = VertexMap::identityOf(g0.vertexIds());
    try {
        int round = 0;
        while (true) {
            if (auto v = oversizedVertex(g, f, cfg.c1, n0)) {
                return finish(f.preimage(*v));
            }
            PreprocessResult p = preprocess(g, f, cfg);
            record("preprocess", round, g, p.graph, 0, 0, 0);
            g = std::move(p.graph);
            f = std::move(p.map);
            if (auto v = oversizedVertex(g, f, cfg.c1, n0)) {
                return finish(f.preimage(*v));
            }
            ReduceResult r = reduce(g, f, cfg);
            record("reduce", round, g, r.graph, r.walksFound, r.walksSurviving,
                   r.contractions);
            g = std::move(r.graph);
            f = std::move(r.map);
            ++round;
        }
    } catch (const EarlyExit& escape) {
        return finish(escape.viable);
    }
}

namespace {

void absorbProfile(std::vector<PhaseRecord>* into,
                   std::vector<PhaseRecord> from, int lift) {
    for (PhaseRecord& r : from) {
        r.depth += lift;
        into->push_back(std::move(r));
    }
}

MatchingResult matchImpl(const PlanarGraph& g, const AlgorithmConfig& cfg);

// Finishing path when walk extraction ran dry: count out a matching of
// the shrunk graph, then match what is left of each preimage around its
// one matched vertex. Any matching of the shrunk graph extends this way
// because every contracted set was tight.
MatchingResult liftFallback(const PlanarGraph& g, const FallbackRequired& fb,
                            const AlgorithmConfig& cfg) {
    MatchingResult out;
    out.matching =
        selfReduce(fb.graph, compositeWeights(fb.graph, cfg, {}));
    std::map<VertexId, VertexId> anchor;
    for (EdgeId e : out.matching) {
        const Edge& edge = g.edge(e);
        for (VertexId end : {edge.u, edge.v}) {
            require(anchor.emplace(fb.map.forward.at(end), end).second,
                    Errc::InternalError,
                    "two matched edges meet one contracted vertex");
        }
    }
    PhaseRecord record;
    record.phase = "fallback";
    record.edgesBefore = g.edgeCount();
    record.edgesAfter = fb.graph.edgeCount();
    record.verticesBefore = g.vertexCount();
    record.verticesAfter = fb.graph.vertexCount();
    out.depthProfile.push_back(std::move(record));
    for (VertexId v : fb.graph.vertexIds()) {
        auto it = anchor.find(v);
        require(it != anchor.end(), Errc::InternalError,
                "contracted vertex left unmatched");
        std::set<VertexId> rest = fb.map.preimage(v);
        rest.erase(it->second);
        if (rest.empty()) continue;
        MatchingResult piece;
        try {
            piece = matchImpl(g.inducedOn(rest), cfg);
        } catch (const Error& e) {
            require(e.code() != Errc::NoPerfectMatching, Errc::InternalError,
                    "contracted preimage lost its matching");
            throw;
        }
        out.matching.insert(piece.matching.begin(), piece.matching.end());
        out.recursionDepth =
            std::max(out.recursionDepth, piece.recursionDepth + 1);
        absorbProfile(&out.depthProfile, std::move(piece.depthProfile), 1);
    }
    return out;
}

MatchingResult matchImpl(const PlanarGraph& g, const AlgorithmConfig& cfg) {
    MatchingResult out;
    if (g.vertexCount() == 0) return out;
    if (g.vertexCount() <= cfg.baseCaseSize) {
        out.matching = selfReduce(g, compositeWeights(g, cfg, {}));
        PhaseRecord record;
        record.phase = "base";
        record.edgesBefore = g.edgeCount();
        record.edgesAfter = g.edgeCount();
        record.verticesBefore = g.vertexCount();
        record.verticesAfter = g.vertexCount();
        out.depthProfile.push_back(std::move(record));
        return out;
    }
    require(g.vertexCount() % 2 == 0 && hasPerfectMatching(g),
            Errc::NoPerfectMatching, "graph has no perfect matching");
    std::vector<PhaseRecord> phases;
    std::set<VertexId> s;
    try {
        s = balancedViableSet(g, cfg, &phases);
    } catch (const FallbackRequired& fb) {
        MatchingResult lifted = liftFallback(g, fb, cfg);
        absorbProfile(&out.depthProfile, std::move(phases), 0);
        absorbProfile(&out.depthProfile, std::move(lifted.depthProfile), 0);
        out.matching = std::move(lifted.matching);
        out.recursionDepth = lifted.recursionDepth;
        require(isPerfectMatching(g, out.matching), Errc::InternalError,
                "lifted edges are not a perfect matching");
        return out;
    }
    std::set<EdgeId> cut = cutEdges(g, s);
    std::map<EdgeId, long long> w;
    for (EdgeId e : cut) w[e] = 1;
    AveragedFace avg = averageFace(g, compositeWeights(g, cfg, w));
    if (cfg.compositeMultiplier == 0) {
        // Viability, rechecked: with unit weight on the cut the minimum
        // face is exactly the matchings crossing once.
        require(cutValue(g, avg.x, s) == Rat(1), Errc::InternalError,
                "viable set lost its unit cut");
    }
    EdgeId pick = 0;
    bool found = false;
    for (EdgeId e : cut) {
        if (avg.x.at(e) > Rat(0)) {
            pick = e;
            found = true;
            break;
        }
    }
    require(found, Errc::InternalError, "no cut edge carries mass");
    const Edge& edge = g.edge(pick);
    const VertexId inS = s.count(edge.u) ? edge.u : edge.v;
    const VertexId outS = edge.other(inS);
    std::set<VertexId> left = s;
    left.erase(inS);
    std::set<VertexId> right;
    for (VertexId v : g.vertexIds()) {
        if (!s.count(v) && v != outS) right.insert(v);
    }
    const PlanarGraph g1 = g.inducedOn(left);
    const PlanarGraph g2 = g.inducedOn(right);
    MatchingResult r1;
    MatchingResult r2;
    try {
        parallelInvoke([&] { r1 = matchImpl(g1, cfg); },
                       [&] { r2 = matchImpl(g2, cfg); });
    } catch (const Error& e) {
        require(e.code() != Errc::NoPerfectMatching, Errc::InternalError,
                "recursion lost the matching");
        throw;
    }
    out.matching = std::move(r1.matching);
    out.matching.insert(r2.matching.begin(), r2.matching.end());
    out.matching.insert(pick);
    require(isPerfectMatching(g, out.matching), Errc::InternalError,
            "assembled edges are not a perfect matching");
    out.recursionDepth = 1 + std::max(r1.recursionDepth, r2.recursionDepth);
    PhaseRecord record;
    record.phase = "split";
    record.edgesBefore = g.edgeCount();
    record.edgesAfter = g1.edgeCount() + g2.edgeCount();
    record.verticesBefore = g.vertexCount();
    record.verticesAfter = g1.vertexCount() + g2.vertexCount();
    out.depthProfile.push_back(std::move(record));
    absorbProfile(&out.depthProfile, std::move(phases), 0);
    absorbProfile(&out.depthProfile, std::move(r1.depthProfile), 1);
    absorbProfile(&out.depthProfile, std::move(r2.depthProfile), 1);
    return out;
}

MatchingResult runRoot(const PlanarGraph& g0, const AlgorithmConfig& cfg) {
    MatchingResult out = matchImpl(g0, cfg);
    if (g0.vertexCount() == 0) return out;
    require(isPerfectMatching(g0, out.matching), Errc::InternalError,
            "result is not a perfect matching");
    // depth <= log base 1/(1-c1) of |V0|, plus two, checked with exact
    // rational powers.
    const Rat ratio = Rat(1) / (Rat(1) - cfg.c1);
    Rat power(1);
    int bound = 0;
    while (power < ratOf(g0.vertexCount())) {
        power *= ratio;
        ++bound;
    }
    require(out.recursionDepth <= bound + 2, Errc::InternalError,
            "recursion exceeded its depth bound");
    return out;
}

}  // namespace

MatchingResult perfectMatching(const PlanarGraph& g0,
                               const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    return runRoot(g0, cfg);
}

MatchingResult minWeightPerfectMatching(const PlanarGraph& g0,
                                        const std::map<EdgeId, long long>& weights,
                                        const AlgorithmConfig& cfg) {
    validateConfig(cfg);
    Int cap;
    mpz_pow_ui(cap.get_mpz_t(), Int(g0.vertexCount()).get_mpz_t(),
               static_cast<unsigned long>(cfg.weightExponent));
    for (const auto& [e, value] : weights) {
        require(g0.hasEdge(e), Errc::MalformedInput,
                "weight names a missing edge");
        require(value >= 0, Errc::NegativeWeight,
                "weights must be nonnegative");
        require(Int(static_cast<long>(value)) <= cap, Errc::WeightTooLarge,
                "weight exceeds the polynomial bound");
    }
    AlgorithmConfig inner = cfg;
    inner.compositeBase = weights;
    inner.compositeMultiplier = std::max(g0.vertexCount(), 1);
    return runRoot(g0, inner);
}

}

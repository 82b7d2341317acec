#include "planarmatch/walks.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "planarmatch/error.hpp"
#include "planarmatch/parallel.hpp"

namespace planarmatch {

namespace {

void requirePreprocessed(const PlanarGraph& g) {
    require(g.vertexCount() > 0, Errc::PreconditionViolated,
            "walk extraction needs a nonempty graph");
    require(connectedComponents(g).size() == 1, Errc::PreconditionViolated,
            "walk extraction needs a connected graph");
    for (VertexId v : g.vertexIds()) {
        require(g.degree(v) != 1, Errc::PreconditionViolated,
                "walk extraction needs a graph without degree-1 vertices");
    }
}

// A face is usable as a cycle only when its boundary repeats no edge and no
// vertex. Bridges and cut vertices produce faces that fail this.
bool simpleCycleOrbit(const PlanarGraph& g, const std::vector<Dart>& orbit) {
    std::set<EdgeId> edges;
    std::set<VertexId> hosts;
    for (const Dart& d : orbit) {
        if (!edges.insert(d.edge).second) return false;
        if (!hosts.insert(g.dartVertex(d)).second) return false;
    }
    return true;
}

struct FaceSelection {
    std::vector<std::vector<Dart>> orbits;
    std::vector<int> chosen;
};

// The degree of a face in the dual multigraph is its boundary length, so the
// degree cap can be read off the orbit without building the dual.
FaceSelection selectFaces(const PlanarGraph& g) {
    requirePreprocessed(g);
    FaceSelection sel;
    sel.orbits = g.faceOrbits();
    const int faceCount = static_cast<int>(sel.orbits.size());

    std::vector<char> usable(sel.orbits.size(), 0);
    parallelFor(sel.orbits.size(), [&](std::size_t i) {
        const auto& orbit = sel.orbits[i];
        usable[i] = orbit.size() <= 24 && simpleCycleOrbit(g, orbit) ? 1 : 0;
    });

    AbstractGraph candidates;
    for (int i = 0; i < faceCount; ++i) {
        if (usable[i]) candidates.addNode(i);
    }
    for (const DualGraph::Arc& arc : g.dual().arcs) {
        if (arc.a != arc.b && usable[arc.a] && usable[arc.b]) {
            candidates.addEdge(arc.a, arc.b);
        }
    }
    for (int i : maximalIndependentSet(candidates)) sel.chosen.push_back(i);
    return sel;
}

std::vector<EdgeId> orbitEdges(const std::vector<Dart>& orbit) {
    std::vector<EdgeId> edges;
    edges.reserve(orbit.size());
    for (const Dart& d : orbit) edges.push_back(d.edge);
    return edges;
}

std::set<VertexId> orbitVertices(const PlanarGraph& g,
                                 const std::vector<Dart>& orbit) {
    std::set<VertexId> hosts;
    for (const Dart& d : orbit) hosts.insert(g.dartVertex(d));
    return hosts;
}

// Boundary edges in orbit order, rotated to start and end at the anchor.
std::vector<EdgeId> cycleFromAnchor(const PlanarGraph& g,
                                    const std::vector<Dart>& orbit,
                                    VertexId anchor) {
    const int k = static_cast<int>(orbit.size());
    int start = -1;
    for (int i = 0; i < k; ++i) {
        if (g.dartVertex(orbit[i]) == anchor) {
            start = i;
            break;
        }
    }
    require(start >= 0, Errc::InternalError, "anchor off the face boundary");
    std::vector<EdgeId> edges;
    edges.reserve(orbit.size());
    for (int i = 0; i < k; ++i) edges.push_back(orbit[(start + i) % k].edge);
    return edges;
}

EvenWalk joinOddFaces(const PlanarGraph& g, const std::vector<Dart>& first,
                      const std::vector<Dart>& second,
                      const std::vector<EdgeId>& path, VertexId pathStart) {
    std::vector<VertexId> chain{pathStart};
    for (EdgeId e : path) chain.push_back(g.edge(e).other(chain.back()));

    // Trim the connecting path to the stretch between its last touch of the
    // first face and its next touch of the second; what remains shares no
    // edge with either face.
    const std::set<VertexId> onFirst = orbitVertices(g, first);
    const std::set<VertexId> onSecond = orbitVertices(g, second);
    int last = 0;
    for (int i = 0; i < static_cast<int>(chain.size()); ++i) {
        if (onFirst.count(chain[i])) last = i;
    }
    int next = -1;
    for (int i = last; i < static_cast<int>(chain.size()); ++i) {
        if (onSecond.count(chain[i])) {
            next = i;
            break;
        }
    }
    require(next >= 0, Errc::InternalError,
            "token path misses the second face");

    EvenWalk walk;
    walk.kind = WalkKind::TwoOddCyclesPlusPath;
    walk.edgeSequence = cycleFromAnchor(g, first, chain[last]);
    for (int i = last; i < next; ++i) {
        walk.edgeSequence.push_back(path[i]);
        walk.pathEdges.insert(path[i]);
    }
    const std::vector<EdgeId> back = cycleFromAnchor(g, second, chain[next]);
    walk.edgeSequence.insert(walk.edgeSequence.end(), back.begin(), back.end());
    for (int i = next - 1; i >= last; --i) walk.edgeSequence.push_back(path[i]);
    return walk;
}

std::set<EdgeId> walkEdges(const EvenWalk& walk) {
    return {walk.edgeSequence.begin(), walk.edgeSequence.end()};
}

}  // namespace

std::set<int> maximalIndependentSet(const AbstractGraph& g) {
    std::set<int> chosen;
    for (int v : g.nodes) {
        bool blocked = false;
        for (int u : g.neighbors(v)) {
            if (chosen.count(u)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) chosen.insert(v);
    }
    return chosen;
}

std::vector<Face> edgeDisjointFaces(const PlanarGraph& g) {
    const FaceSelection sel = selectFaces(g);
    std::vector<Face> faces;
    faces.reserve(sel.chosen.size());
    for (int i : sel.chosen) faces.push_back(Face{orbitEdges(sel.orbits[i])});
    return faces;
}

TokenPairing treePairTokens(const PlanarGraph& tree,
                            const std::vector<VertexId>& tokens) {
    require(tokens.size() % 2 == 0, Errc::OddTokenCount,
            "token pairing needs an even number of tokens");
    require(tree.edgeCount() == tree.vertexCount() - 1 &&
                connectedComponents(tree).size() <= 1,
            Errc::PreconditionViolated, "token pairing runs on a tree");
    std::map<VertexId, int> tokensAt;
    for (VertexId v : tokens) {
        require(tree.hasVertex(v), Errc::PreconditionViolated,
                "token placed outside the tree");
        ++tokensAt[v];
    }

    TokenPairing pairing;
    if (tokens.empty()) return pairing;

    // Root anywhere and count tokens per subtree. A tree edge splits the
    // tokens evenly exactly when the child-side count is even; those edges
    // can never carry a pairing path and are pruned.
    const VertexId root = tree.vertexIds().front();
    std::map<VertexId, EdgeId> parentEdge;
    std::vector<VertexId> order;
    order.push_back(root);
    std::set<VertexId> seen{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (EdgeId e : tree.incidentEdges(order[i])) {
            const VertexId far = tree.edge(e).other(order[i]);
            if (seen.insert(far).second) {
                parentEdge[far] = e;
                order.push_back(far);
            }
        }
    }
    std::map<VertexId, int> subtreeTokens;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int total = tokensAt.count(*it) ? tokensAt[*it] : 0;
        for (EdgeId e : tree.incidentEdges(*it)) {
            const VertexId far = tree.edge(e).other(*it);
            if (parentEdge.count(far) && parentEdge[far] == e) {
                total += subtreeTokens[far];
            }
        }
        subtreeTokens[*it] = total;
    }
    std::set<EdgeId> kept;
    for (const auto& [child, e] : parentEdge) {
        if (subtreeTokens[child] % 2 == 1) kept.insert(e);
    }

    // Local pairing at each vertex: tokens pair off among themselves, at
    // most one leftover takes the smallest kept edge, and the remaining
    // kept edges pair off so a route entering by one leaves by the other.
    std::map<VertexId, std::vector<int>> localTokens;
    for (int t = 0; t < static_cast<int>(tokens.size()); ++t) {
        localTokens[tokens[t]].push_back(t);
    }
    std::map<VertexId, std::map<EdgeId, EdgeId>> edgeLink;
    std::map<VertexId, std::map<EdgeId, int>> tokenLink;
    std::map<int, EdgeId> startEdge;
    for (const auto& [v, local] : localTokens) {
        for (std::size_t i = 0; i + 1 < local.size(); i += 2) {
            pairing.pairs.push_back({local[i], local[i + 1], {}});
        }
        std::vector<EdgeId> incident;
        for (EdgeId e : tree.incidentEdges(v)) {
            if (kept.count(e)) incident.push_back(e);
        }
        std::sort(incident.begin(), incident.end());
        std::size_t from = 0;
        if (local.size() % 2 == 1) {
            const int leftover = local.back();
            require(!incident.empty(), Errc::InternalError,
                    "leftover token with no kept edge");
            tokenLink[v][incident[0]] = leftover;
            startEdge[leftover] = incident[0];
            from = 1;
        }
        require((incident.size() - from) % 2 == 0, Errc::InternalError,
                "kept degree disagrees with token parity");
        for (std::size_t i = from; i + 1 < incident.size(); i += 2) {
            edgeLink[v][incident[i]] = incident[i + 1];
            edgeLink[v][incident[i + 1]] = incident[i];
        }
    }
    for (VertexId v : tree.vertexIds()) {
        if (localTokens.count(v)) continue;
        std::vector<EdgeId> incident;
        for (EdgeId e : tree.incidentEdges(v)) {
            if (kept.count(e)) incident.push_back(e);
        }
        std::sort(incident.begin(), incident.end());
        require(incident.size() % 2 == 0, Errc::InternalError,
                "kept degree disagrees with token parity");
        for (std::size_t i = 0; i + 1 < incident.size(); i += 2) {
            edgeLink[v][incident[i]] = incident[i + 1];
            edgeLink[v][incident[i + 1]] = incident[i];
        }
    }

    // Follow each leftover token's route. Legs alternate between crossing
    // an edge and switching to its partner edge, so every route walks a
    // simple tree path and stops at the token linked to its final edge.
    std::set<int> resolved;
    for (const auto& [t, e0] : startEdge) {
        if (resolved.count(t)) continue;
        std::vector<EdgeId> path{e0};
        VertexId at = tokens[t];
        EdgeId e = e0;
        int partner = -1;
        for (int guard = 0; guard <= tree.edgeCount(); ++guard) {
            at = tree.edge(e).other(at);
            const auto viaToken = tokenLink.find(at);
            if (viaToken != tokenLink.end() && viaToken->second.count(e)) {
                partner = viaToken->second.at(e);
                break;
            }
            const auto links = edgeLink.find(at);
            require(links != edgeLink.end() && links->second.count(e),
                    Errc::InternalError,
                    "token route hit an unmatched edge end");
            e = links->second.at(e);
            path.push_back(e);
        }
        require(partner >= 0, Errc::InternalError,
                "token route failed to terminate");
        pairing.pairs.push_back({t, partner, std::move(path)});
        resolved.insert(t);
        resolved.insert(partner);
    }
    return pairing;
}

std::vector<EvenWalk> findEvenWalks(const PlanarGraph& g) {
    const FaceSelection sel = selectFaces(g);
    std::vector<int> evens;
    std::vector<int> odds;
    for (int i : sel.chosen) {
        (sel.orbits[i].size() % 2 == 0 ? evens : odds).push_back(i);
    }

    std::vector<EvenWalk> walks;
    if (2 * evens.size() >= sel.chosen.size()) {
        for (int i : evens) {
            EvenWalk walk;
            walk.kind = WalkKind::SimpleEvenCycle;
            walk.edgeSequence = orbitEdges(sel.orbits[i]);
            walks.push_back(std::move(walk));
        }
    } else {
        if (odds.size() % 2 == 1) odds.pop_back();
        std::vector<VertexId> tokens;
        for (int i : odds) {
            tokens.push_back(*orbitVertices(g, sel.orbits[i]).begin());
        }
        std::set<EdgeId> drop;
        const std::set<EdgeId> treeEdges = spanningForest(g);
        for (EdgeId e : g.edgeIds()) {
            if (!treeEdges.count(e)) drop.insert(e);
        }
        const TokenPairing pairing =
            treePairTokens(g.withoutEdges(drop), tokens);

        std::vector<EvenWalk> candidates;
        const long long f = static_cast<long long>(tokens.size());
        for (const TokenPairing::Pair& p : pairing.pairs) {
            EvenWalk walk =
                joinOddFaces(g, sel.orbits[odds[p.first]],
                             sel.orbits[odds[p.second]], p.path,
                             tokens[p.first]);
            const long long size =
                static_cast<long long>(walkEdges(walk).size());
            if (size * f <= 4LL * g.edgeCount()) {
                candidates.push_back(std::move(walk));
            }
        }

        AbstractGraph conflicts;
        std::vector<std::set<EdgeId>> used;
        used.reserve(candidates.size());
        for (const EvenWalk& walk : candidates) used.push_back(walkEdges(walk));
        for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
            conflicts.addNode(i);
            for (int j = 0; j < i; ++j) {
                const bool disjoint = std::ranges::none_of(
                    used[i], [&](EdgeId e) { return used[j].count(e) != 0; });
                if (!disjoint) conflicts.addEdge(j, i);
            }
        }
        for (int i : maximalIndependentSet(conflicts)) {
            walks.push_back(std::move(candidates[i]));
        }
    }

    require(!walks.empty(), Errc::NoWalksFound,
            "no even walks survived face selection");
    parallelFor(walks.size(),
                [&](std::size_t i) { validateEvenWalk(g, walks[i]); });
    return walks;
}

}  // namespace planarmatch

#include <algorithm>
#include <string>
#include <vector>

#include "planarmatch/error.hpp"
#include "planarmatch/graph.hpp"

namespace planarmatch {

namespace {

// Mutable working copy of a graph during contraction. The surgery happens
// edge by edge so the rotation splice below is the only place embeddings
// are edited by hand anywhere in the library.
struct Surgeon {
    std::map<EdgeId, Edge> edges;
    std::map<VertexId, std::vector<Dart>> rot;

    // Drops every loop sitting at v together with its edge record. Loops
    // appear when a contraction fuses the endpoints of a parallel edge and
    // matchings can never use them.
    void deleteLoopsAt(VertexId v) {
        std::set<EdgeId> loops;
        for (const Dart& d : rot.at(v)) {
            const Edge& e = edges.at(d.edge);
            if (e.u == e.v) loops.insert(d.edge);
        }
        if (loops.empty()) return;
        std::erase_if(rot.at(v), [&](const Dart& d) { return loops.count(d.edge) != 0; });
        for (EdgeId id : loops) edges.erase(id);
    }

    // Contracts one edge, merging the larger endpoint into the smaller.
    // The rotation of the kept vertex gets the gone vertex's ring spliced
    // in at the contracted edge's position, which is exactly what shrinking
    // the edge to a point does to the embedding.
    std::pair<VertexId, VertexId> contractEdge(EdgeId id) {
        const Edge record = edges.at(id);
        require(record.u != record.v, Errc::InternalError, "contracting a loop");
        VertexId keep = std::min(record.u, record.v);
        VertexId gone = std::max(record.u, record.v);
        Dart keepDart{id, record.u == keep ? 0 : 1};
        Dart goneDart = flip(keepDart);

        const std::vector<Dart> ringKeep = rot.at(keep);
        const std::vector<Dart> ringGone = rot.at(gone);
        auto posKeep = std::find(ringKeep.begin(), ringKeep.end(), keepDart);
        auto posGone = std::find(ringGone.begin(), ringGone.end(), goneDart);
        require(posKeep != ringKeep.end() && posGone != ringGone.end(), Errc::InternalError,
                "contracted edge missing from a rotation");

        std::vector<Dart> merged;
        merged.reserve(ringKeep.size() + ringGone.size() - 2);
        merged.insert(merged.end(), ringKeep.begin(), posKeep);
        merged.insert(merged.end(), posGone + 1, ringGone.end());
        merged.insert(merged.end(), ringGone.begin(), posGone);
        merged.insert(merged.end(), posKeep + 1, ringKeep.end());

        for (const Dart& d : ringGone) {
            if (d == goneDart) continue;
            Edge& moved = edges.at(d.edge);
            (d.end == 0 ? moved.u : moved.v) = keep;
        }
        rot.erase(gone);
        rot[keep] = std::move(merged);
        edges.erase(id);
        deleteLoopsAt(keep);
        return {keep, gone};
    }

    void renameVertex(VertexId from, VertexId to) {
        std::vector<Dart> ring = std::move(rot.at(from));
        rot.erase(from);
        for (const Dart& d : ring) {
            Edge& moved = edges.at(d.edge);
            (d.end == 0 ? moved.u : moved.v) = to;
        }
        rot[to] = std::move(ring);
    }
};

}

ContractionResult contractSet(const PlanarGraph& g, const std::set<VertexId>& s,
                              const VertexMap& f) {
    if (s.empty()) fail(Errc::InvalidSet, "cannot contract the empty set");
    if (static_cast<int>(s.size()) >= g.vertexCount()) {
        fail(Errc::InvalidSet, "cannot contract the whole vertex set");
    }
    for (VertexId v : s) {
        if (!g.hasVertex(v)) {
            fail(Errc::InvalidSet, "set names missing vertex " + std::to_string(v));
        }
        require(f.preimageSize.count(v) != 0, Errc::InternalError,
                "vertex map does not cover the contracted set");
    }

    const VertexId fresh = g.maxVertexId() + 1;
    Surgeon surgeon{g.edges(), g.rotation()};

    // Union-find over S doubling as the merge tracker. Spanning forest
    // edges of the induced subgraph are taken in ascending id order; any
    // other internal edge turns into a loop along the way and is deleted by
    // the surgeon on the spot.
    std::map<VertexId, VertexId> leader;
    for (VertexId v : s) leader[v] = v;
    auto root = [&](VertexId v) {
        while (leader[v] != v) {
            leader[v] = leader[leader[v]];
            v = leader[v];
        }
        return v;
    };
    std::vector<EdgeId> treeEdges;
    for (const auto& [id, record] : g.edges()) {
        if (!s.count(record.u) || !s.count(record.v)) continue;
        VertexId a = root(record.u);
        VertexId b = root(record.v);
        if (a == b) continue;
        leader[std::max(a, b)] = std::min(a, b);
        treeEdges.push_back(id);
    }
    for (EdgeId id : treeEdges) {
        // The stored endpoints track merges, so the edge still joins two
        // distinct current vertices when its turn comes.
        surgeon.contractEdge(id);
    }

    std::set<VertexId> representatives;
    for (VertexId v : s) representatives.insert(root(v));

    // Every remaining dart at a representative leads outside S. At most one
    // internally connected part may still touch the outside; the others
    // must be whole components that S swallowed (that is the only
    // disconnected shape a tight odd set can have once zero edges are
    // gone), and they vanish without any gluing decision.
    std::vector<VertexId> withBoundary;
    for (VertexId rep : representatives) {
        if (!surgeon.rot.at(rep).empty()) withBoundary.push_back(rep);
    }
    require(withBoundary.size() <= 1, Errc::InternalError,
            "contracted set splits its boundary across separate parts");

    if (withBoundary.empty()) {
        surgeon.rot[fresh] = {};
    } else {
        surgeon.renameVertex(withBoundary.front(), fresh);
    }
    for (VertexId rep : representatives) {
        if (!withBoundary.empty() && rep == withBoundary.front()) continue;
        surgeon.rot.erase(rep);
    }

    VertexMap updated = f;
    long long preimages = 0;
    for (auto& [original, current] : updated.forward) {
        if (s.count(current)) current = fresh;
    }
    for (VertexId v : s) {
        preimages += updated.preimageSize.at(v);
        updated.preimageSize.erase(v);
    }
    updated.preimageSize[fresh] = preimages;

    ContractionResult result;
    result.graph = PlanarGraph::build(std::move(surgeon.edges), std::move(surgeon.rot));
    result.map = std::move(updated);
    result.mergedVertex = fresh;
    return result;
}

}

#include "planarmatch/graph.hpp"

#include <algorithm>
#include <string>

#include "planarmatch/error.hpp"

namespace planarmatch {

namespace {

// Rotations are cyclic, so storage order is a free choice. Starting every
// list at its minimal dart makes graph comparison and the writer canonical.
void canonicalize(std::map<VertexId, std::vector<Dart>>& rotation) {
    for (auto& [vertex, darts] : rotation) {
        if (darts.empty()) continue;
        auto lowest = std::min_element(darts.begin(), darts.end());
        std::rotate(darts.begin(), lowest, darts.end());
    }
}

}

VertexMap VertexMap::identityOf(const std::vector<VertexId>& vertices) {
    VertexMap map;
    for (VertexId v : vertices) {
        map.forward[v] = v;
        map.preimageSize[v] = 1;
    }
    return map;
}

long long VertexMap::originalCount() const {
    return static_cast<long long>(forward.size());
}

std::set<VertexId> VertexMap::preimage(VertexId current) const {
    std::set<VertexId> result;
    for (const auto& [original, now] : forward) {
        if (now == current) result.insert(original);
    }
    return result;
}

long long VertexMap::preimageCount(const std::set<VertexId>& current) const {
    long long total = 0;
    for (VertexId v : current) {
        auto found = preimageSize.find(v);
        require(found != preimageSize.end(), Errc::InternalError,
                "preimage query for unknown vertex");
        total += found->second;
    }
    return total;
}

PlanarGraph PlanarGraph::build(std::map<EdgeId, Edge> edges,
                               std::map<VertexId, std::vector<Dart>> rotation) {
    canonicalize(rotation);
    PlanarGraph g;
    g.edges_ = std::move(edges);
    g.rotation_ = std::move(rotation);
    g.validate();
    return g;
}

PlanarGraph buildGraph(const std::map<EdgeId, Edge>& edges,
                       const std::map<VertexId, std::vector<Dart>>& rotation) {
    return PlanarGraph::build(edges, rotation);
}

const Edge& PlanarGraph::edge(EdgeId e) const {
    auto found = edges_.find(e);
    require(found != edges_.end(), Errc::InternalError,
            "edge id not present in graph");
    return found->second;
}

const std::vector<Dart>& PlanarGraph::rotationAt(VertexId v) const {
    auto found = rotation_.find(v);
    require(found != rotation_.end(), Errc::InternalError,
            "vertex id not present in graph");
    return found->second;
}

std::vector<VertexId> PlanarGraph::vertexIds() const {
    std::vector<VertexId> ids;
    ids.reserve(rotation_.size());
    for (const auto& [v, darts] : rotation_) ids.push_back(v);
    return ids;
}

std::vector<EdgeId> PlanarGraph::edgeIds() const {
    std::vector<EdgeId> ids;
    ids.reserve(edges_.size());
    for (const auto& [e, record] : edges_) ids.push_back(e);
    return ids;
}

VertexId PlanarGraph::maxVertexId() const {
    require(!rotation_.empty(), Errc::InternalError, "empty graph has no vertex ids");
    return rotation_.rbegin()->first;
}

VertexId PlanarGraph::dartVertex(const Dart& d) const {
    const Edge& e = edge(d.edge);
    return d.end == 0 ? e.u : e.v;
}

int PlanarGraph::degree(VertexId v) const {
    return static_cast<int>(rotationAt(v).size());
}

std::vector<EdgeId> PlanarGraph::incidentEdges(VertexId v) const {
    std::vector<EdgeId> out;
    for (const Dart& d : rotationAt(v)) out.push_back(d.edge);
    return out;
}

Dart PlanarGraph::faceNext(const Dart& d) const {
    Dart across = flip(d);
    const std::vector<Dart>& ring = rotationAt(dartVertex(across));
    auto here = std::find(ring.begin(), ring.end(), across);
    require(here != ring.end(), Errc::InternalError, "dart missing from its rotation");
    ++here;
    return here == ring.end() ? ring.front() : *here;
}

std::vector<std::vector<Dart>> PlanarGraph::faceOrbits() const {
    // Successor lookup for the whole graph at once.
    std::map<Dart, Dart> successor;
    for (const auto& [vertex, ring] : rotation_) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            successor[ring[i]] = ring[(i + 1) % ring.size()];
        }
    }
    std::vector<std::vector<Dart>> orbits;
    std::set<Dart> seen;
    for (const auto& [id, record] : edges_) {
        for (int end : {0, 1}) {
            Dart start{id, end};
            if (seen.count(start)) continue;
            std::vector<Dart> orbit;
            Dart walk = start;
            do {
                require(seen.insert(walk).second, Errc::InternalError,
                        "face walk revisited a dart");
                orbit.push_back(walk);
                walk = successor.at(flip(walk));
            } while (!(walk == start));
            orbits.push_back(std::move(orbit));
        }
    }
    return orbits;
}

std::vector<Face> PlanarGraph::faces() const {
    std::vector<Face> out;
    for (const auto& orbit : faceOrbits()) {
        Face face;
        for (const Dart& d : orbit) face.boundary.push_back(d.edge);
        out.push_back(std::move(face));
    }
    return out;
}

DualGraph PlanarGraph::dual() const {
    auto orbits = faceOrbits();
    std::map<Dart, int> faceOf;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        for (const Dart& d : orbits[i]) faceOf[d] = static_cast<int>(i);
    }
    DualGraph out;
    out.faceCount = static_cast<int>(orbits.size());
    for (const auto& [id, record] : edges_) {
        int side0 = faceOf.at(Dart{id, 0});
        int side1 = faceOf.at(Dart{id, 1});
        out.sides[id] = {side0, side1};
        if (side0 == side1) {
            out.bridgeLoops.push_back(id);
        } else {
            out.arcs.push_back({std::min(side0, side1), std::max(side0, side1), id});
        }
    }
    return out;
}

PlanarGraph PlanarGraph::withoutEdges(const std::set<EdgeId>& drop) const {
    std::map<EdgeId, Edge> edges = edges_;
    std::map<VertexId, std::vector<Dart>> rotation = rotation_;
    for (EdgeId id : drop) {
        require(edges.erase(id) == 1, Errc::InternalError,
                "removing an edge id that is not present");
    }
    for (auto& [vertex, ring] : rotation) {
        std::erase_if(ring, [&](const Dart& d) { return drop.count(d.edge) != 0; });
    }
    return build(std::move(edges), std::move(rotation));
}

PlanarGraph PlanarGraph::inducedOn(const std::set<VertexId>& keep) const {
    std::map<EdgeId, Edge> edges;
    std::map<VertexId, std::vector<Dart>> rotation;
    for (const auto& [id, record] : edges_) {
        if (keep.count(record.u) && keep.count(record.v)) edges[id] = record;
    }
    for (const auto& [vertex, ring] : rotation_) {
        if (!keep.count(vertex)) continue;
        std::vector<Dart> kept;
        for (const Dart& d : ring) {
            if (edges.count(d.edge)) kept.push_back(d);
        }
        rotation[vertex] = std::move(kept);
    }
    return build(std::move(edges), std::move(rotation));
}

PlanarGraph PlanarGraph::withoutVertices(const std::set<VertexId>& drop) const {
    std::set<VertexId> keep;
    for (const auto& [vertex, ring] : rotation_) {
        if (!drop.count(vertex)) keep.insert(vertex);
    }
    return inducedOn(keep);
}

PlanarGraph PlanarGraph::withWeights(const std::map<EdgeId, long long>& weights) const {
    for (const auto& [id, value] : weights) {
        require(edges_.count(id) != 0, Errc::InternalError,
                "weight given for an edge id that is not present");
    }
    PlanarGraph g = *this;
    for (auto& [id, record] : g.edges_) {
        auto found = weights.find(id);
        record.weight = found == weights.end() ? 0 : found->second;
    }
    return g;
}

void PlanarGraph::validate() const {
    for (const auto& [id, record] : edges_) {
        if (record.u == record.v) {
            fail(Errc::LoopEdge, "edge " + std::to_string(id) + " is a loop");
        }
        for (VertexId endpoint : {record.u, record.v}) {
            if (!rotation_.count(endpoint)) {
                fail(Errc::MalformedRotation, "edge " + std::to_string(id) +
                                                  " endpoint " + std::to_string(endpoint) +
                                                  " has no rotation entry");
            }
        }
    }
    std::set<Dart> seen;
    for (const auto& [vertex, ring] : rotation_) {
        for (const Dart& d : ring) {
            auto found = edges_.find(d.edge);
            if (found == edges_.end() || (d.end != 0 && d.end != 1)) {
                fail(Errc::MalformedRotation, "unknown dart at vertex " + std::to_string(vertex));
            }
            VertexId host = d.end == 0 ? found->second.u : found->second.v;
            if (host != vertex) {
                fail(Errc::MalformedRotation, "dart for edge " + std::to_string(d.edge) +
                                                  " listed at the wrong vertex");
            }
            if (!seen.insert(d).second) {
                fail(Errc::MalformedRotation,
                     "duplicated dart for edge " + std::to_string(d.edge));
            }
        }
    }
    if (seen.size() != 2 * edges_.size()) {
        fail(Errc::MalformedRotation, "some edge end is missing from the rotation system");
    }

    // Per-component Euler relation. Orbits of the face permutation within a
    // connected embedded component must number exactly E - V + 2; checking
    // per component also pins the derived whole-graph relation
    // |V| - |E| + |F| = 1 + #components once shared outer faces are merged.
    std::map<VertexId, VertexId> leader;
    for (const auto& [vertex, ring] : rotation_) leader[vertex] = vertex;
    auto root = [&](VertexId v) {
        while (leader[v] != v) {
            leader[v] = leader[leader[v]];
            v = leader[v];
        }
        return v;
    };
    for (const auto& [id, record] : edges_) {
        VertexId a = root(record.u);
        VertexId b = root(record.v);
        if (a != b) leader[std::max(a, b)] = std::min(a, b);
    }
    std::map<VertexId, long long> vertexTally;
    std::map<VertexId, long long> edgeTally;
    std::map<VertexId, long long> orbitTally;
    for (const auto& [vertex, ring] : rotation_) vertexTally[root(vertex)] += 1;
    for (const auto& [id, record] : edges_) edgeTally[root(record.u)] += 1;
    for (const auto& orbit : faceOrbits()) {
        VertexId host = dartVertex(orbit.front());
        orbitTally[root(host)] += 1;
    }
    for (const auto& [comp, edgeCountHere] : edgeTally) {
        long long expected = edgeCountHere - vertexTally[comp] + 2;
        if (orbitTally[comp] != expected) {
            fail(Errc::EulerViolation,
                 "component at vertex " + std::to_string(comp) + " has " +
                     std::to_string(orbitTally[comp]) + " faces, embedding needs " +
                     std::to_string(expected));
        }
    }
}

}

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace planarmatch {

using VertexId = int;
using EdgeId = int;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    long long weight = 0;

    VertexId other(VertexId at) const { return at == u ? v : u; }
    bool touches(VertexId x) const { return x == u || x == v; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

// One end of an edge. End 0 lives at the edge's u vertex, end 1 at v. The
// rotation system lists, per vertex, the cyclic order of the ends hosted
// there, which fixes the embedding.
struct Dart {
    EdgeId edge = 0;
    int end = 0;

    friend auto operator<=>(const Dart&, const Dart&) = default;
};

inline Dart flip(const Dart& d) { return Dart{d.edge, d.end ^ 1}; }

struct Face {
    // Edge ids in boundary order, starting at the face's minimal dart. An
    // edge appears twice when the face touches both of its sides.
    std::vector<EdgeId> boundary;
};

// Dual adjacency structure. Faces are numbered 0..faceCount-1 in the order
// faces() lists them. Bridges would dualize to loops; those are dropped from
// the arc list but recorded so the edge correspondence stays a bijection.
struct DualGraph {
    struct Arc {
        int a = 0;
        int b = 0;
        EdgeId primal = 0;
    };

    int faceCount = 0;
    std::vector<Arc> arcs;
    std::vector<EdgeId> bridgeLoops;
    // Face index on each side of every primal edge: (side of end 0, side of
    // end 1). Bridges have both sides equal.
    std::map<EdgeId, std::pair<int, int>> sides;
};

// Tracks how original vertices map to vertices of a contracted graph.
struct VertexMap {
    std::map<VertexId, VertexId> forward;
    std::map<VertexId, long long> preimageSize;

    static VertexMap identityOf(const std::vector<VertexId>& vertices);

    long long originalCount() const;
    std::set<VertexId> preimage(VertexId current) const;
    // Preimage count of a whole set of current vertices.
    long long preimageCount(const std::set<VertexId>& current) const;
};

class PlanarGraph {
public:
    PlanarGraph() = default;

    // Validated construction. Throws MalformedRotation, LoopEdge or
    // EulerViolation when the parts do not describe a planar embedding.
    static PlanarGraph build(std::map<EdgeId, Edge> edges,
                             std::map<VertexId, std::vector<Dart>> rotation);

    int vertexCount() const { return static_cast<int>(rotation_.size()); }
    int edgeCount() const { return static_cast<int>(edges_.size()); }
    bool hasVertex(VertexId v) const { return rotation_.count(v) != 0; }
    bool hasEdge(EdgeId e) const { return edges_.count(e) != 0; }
    const Edge& edge(EdgeId e) const;
    const std::map<EdgeId, Edge>& edges() const { return edges_; }
    const std::vector<Dart>& rotationAt(VertexId v) const;
    const std::map<VertexId, std::vector<Dart>>& rotation() const { return rotation_; }
    std::vector<VertexId> vertexIds() const;
    std::vector<EdgeId> edgeIds() const;
    VertexId maxVertexId() const;

    VertexId dartVertex(const Dart& d) const;
    int degree(VertexId v) const;
    // Edge ids incident to v in rotation order.
    std::vector<EdgeId> incidentEdges(VertexId v) const;

    // Face orbit successor: cross the edge, then take the next end in the
    // rotation at the far vertex.
    Dart faceNext(const Dart& d) const;

    // Orbits of the face permutation, darts in traversal order. Each orbit
    // starts at its minimal dart and orbits are listed by that dart.
    std::vector<std::vector<Dart>> faceOrbits() const;
    std::vector<Face> faces() const;
    DualGraph dual() const;

    // All return new graphs; ids are preserved.
    PlanarGraph withoutEdges(const std::set<EdgeId>& drop) const;
    PlanarGraph inducedOn(const std::set<VertexId>& keep) const;
    PlanarGraph withoutVertices(const std::set<VertexId>& drop) const;
    PlanarGraph withWeights(const std::map<EdgeId, long long>& weights) const;

    // Rechecks every structural invariant; build() runs this, and the
    // contraction surgery runs it again on its output.
    void validate() const;

    friend bool operator==(const PlanarGraph&, const PlanarGraph&) = default;

private:
    std::map<EdgeId, Edge> edges_;
    std::map<VertexId, std::vector<Dart>> rotation_;
};

PlanarGraph buildGraph(const std::map<EdgeId, Edge>& edges,
                       const std::map<VertexId, std::vector<Dart>>& rotation);

struct ContractionResult {
    PlanarGraph graph;
    VertexMap map;
    VertexId mergedVertex = 0;
};

// Replaces S by one fresh vertex. Loops created by the contraction are
// deleted; parallel edges survive with their ids and weights; the rotation
// system is rebuilt so the result is again a valid embedding. Parts of S
// that are internally disconnected may only be glued when at most one of
// them still has edges leaving S, which is the only shape the algorithms
// ever contract.
ContractionResult contractSet(const PlanarGraph& g, const std::set<VertexId>& s,
                              const VertexMap& f);

// Graph text format (v1).
std::string writeGraphText(const PlanarGraph& g);
PlanarGraph readGraphText(const std::string& text);
PlanarGraph loadGraphFile(const std::string& path);
void saveGraphFile(const PlanarGraph& g, const std::string& path);

// Weight files: one "<edge id> <weight>" line per edge, any subset of edges.
std::map<EdgeId, long long> readWeightsFile(const std::string& path);
void saveWeightsFile(const std::map<EdgeId, long long>& weights, const std::string& path);

}

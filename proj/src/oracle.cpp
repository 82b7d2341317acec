#include "planarmatch/oracle.hpp"

#include <algorithm>
#include <functional>

#include "planarmatch/error.hpp"

namespace planarmatch::oracle {

EnumerationReport enumeratePerfectMatchings(const PlanarGraph& g) {
    std::map<EdgeId, long long> w;
    for (const auto& [id, record] : g.edges()) w[id] = record.weight;
    return enumeratePerfectMatchings(g, w);
}

EnumerationReport enumeratePerfectMatchings(const PlanarGraph& g,
                                            const std::map<EdgeId, long long>& w) {
    if (g.vertexCount() > 20) fail(Errc::TooLarge, "enumeration is limited to 20 vertices");
    EnumerationReport report;
    if (g.vertexCount() % 2 == 1) return report;

    auto weightOf = [&](EdgeId id) {
        auto found = w.find(id);
        return found == w.end() ? 0LL : found->second;
    };

    std::set<VertexId> uncovered;
    for (VertexId v : g.vertexIds()) uncovered.insert(v);
    std::set<EdgeId> chosen;
    std::function<void()> extend = [&] {
        if (uncovered.empty()) {
            report.matchings.push_back(chosen);
            return;
        }
        VertexId v = *uncovered.begin();
        for (EdgeId id : g.incidentEdges(v)) {
            VertexId other = g.edge(id).other(v);
            if (!uncovered.count(other)) continue;
            uncovered.erase(v);
            uncovered.erase(other);
            chosen.insert(id);
            extend();
            chosen.erase(id);
            uncovered.insert(v);
            uncovered.insert(other);
        }
    };
    extend();

    report.matchingCount = static_cast<long long>(report.matchings.size());
    if (report.matchings.empty()) return report;

    long long best = 0;
    bool haveBest = false;
    std::vector<long long> totals;
    for (const auto& matching : report.matchings) {
        long long total = 0;
        for (EdgeId id : matching) total += weightOf(id);
        totals.push_back(total);
        if (!haveBest || total < best) {
            best = total;
            haveBest = true;
        }
    }
    report.optimalWeight = best;
    for (std::size_t i = 0; i < report.matchings.size(); ++i) {
        if (totals[i] != best) continue;
        ++report.minWeightCount;
        for (EdgeId id : report.matchings[i]) ++report.perEdgeMinWeight[id];
    }
    for (const auto& [id, record] : g.edges()) {
        report.perEdgeMinWeight.emplace(id, 0);
    }
    return report;
}

namespace {

// Shared scaffolding for the subset exhaustions: vertices indexed by rank,
// edges as index pairs.
struct SubsetFrame {
    std::vector<VertexId> verts;
    std::vector<std::pair<int, int>> ends;
    std::vector<Rat> cap;

    SubsetFrame(const PlanarGraph& g, const std::map<EdgeId, Rat>& value) {
        verts = g.vertexIds();
        std::map<VertexId, int> rank;
        for (std::size_t i = 0; i < verts.size(); ++i) rank[verts[i]] = static_cast<int>(i);
        for (const auto& [id, record] : g.edges()) {
            ends.push_back({rank.at(record.u), rank.at(record.v)});
            auto found = value.find(id);
            cap.push_back(found == value.end() ? Rat(0) : found->second);
        }
    }

    Rat cutValue(unsigned mask) const {
        Rat total(0);
        for (std::size_t i = 0; i < ends.size(); ++i) {
            bool uIn = (mask >> ends[i].first) & 1u;
            bool vIn = (mask >> ends[i].second) & 1u;
            if (uIn != vIn) total += cap[i];
        }
        return total;
    }

    std::set<VertexId> setOf(unsigned mask) const {
        std::set<VertexId> out;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if ((mask >> i) & 1u) out.insert(verts[i]);
        }
        return out;
    }
};

}

OddCutReport bruteMinOddCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    int n = g.vertexCount();
    if (n > 16) fail(Errc::TooLarge, "odd cut exhaustion is limited to 16 vertices");
    require(n >= 2, Errc::InternalError, "odd cut needs at least two vertices");
    SubsetFrame frame(g, cap);

    bool have = false;
    OddCutReport best;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2 == 0) continue;
        Rat value = frame.cutValue(mask);
        if (!have || value < best.value) {
            best.value = value;
            best.side = frame.setOf(mask);
            have = true;
        } else if (value == best.value) {
            std::set<VertexId> side = frame.setOf(mask);
            if (side < best.side) best.side = std::move(side);
        }
    }
    require(have, Errc::InternalError, "no odd subset exists");
    return best;
}

PolytopeReport brutePolytopeCheck(const std::map<EdgeId, Rat>& x, const PlanarGraph& g) {
    int n = g.vertexCount();
    if (n > 16) fail(Errc::TooLarge, "polytope exhaustion is limited to 16 vertices");
    PolytopeReport report;

    report.nonnegative = true;
    for (const auto& [id, value] : x) {
        require(g.hasEdge(id), Errc::InternalError, "point names an edge outside the graph");
        if (value < 0) report.nonnegative = false;
    }

    auto valueOf = [&](EdgeId id) {
        auto found = x.find(id);
        return found == x.end() ? Rat(0) : found->second;
    };
    report.degreesOk = true;
    for (VertexId v : g.vertexIds()) {
        Rat degree(0);
        for (EdgeId id : g.incidentEdges(v)) degree += valueOf(id);
        if (degree != 1) report.degreesOk = false;
    }

    SubsetFrame frame(g, x);
    bool have = false;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2 == 0) continue;
        Rat value = frame.cutValue(mask);
        if (!have || value < report.minOddCutValue) {
            report.minOddCutValue = value;
            have = true;
        }
        if (value == 1) report.tightSets.push_back(frame.setOf(mask));
    }
    require(have, Errc::InternalError, "no odd subset exists");
    std::sort(report.tightSets.begin(), report.tightSets.end());
    report.member = report.degreesOk && report.nonnegative && report.minOddCutValue >= 1;
    return report;
}

bool validateMatching(const PlanarGraph& g, const std::set<EdgeId>& m) {
    std::set<VertexId> covered;
    for (EdgeId id : m) {
        if (!g.hasEdge(id)) return false;
        const Edge& record = g.edge(id);
        if (!covered.insert(record.u).second) return false;
        if (!covered.insert(record.v).second) return false;
    }
    return covered.size() == static_cast<std::size_t>(g.vertexCount());
}

}

#include "planarmatch/cuts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "planarmatch/error.hpp"
#include "planarmatch/graph_algos.hpp"
#include "planarmatch/parallel.hpp"

namespace planarmatch {

namespace {

// Undirected capacity network over plain vertex ids. The Gomory-Hu rounds
// work on graphs with shrunk subtrees, which stops them from being planar
// embeddings, so flows run on this structure instead of PlanarGraph.
struct FlowGraph {
    std::set<VertexId> nodes;
    // cap[a][b] == cap[b][a]; only nonzero pairs are stored.
    std::map<VertexId, std::map<VertexId, Rat>> cap;

    void addNode(VertexId v) { nodes.insert(v); }

    void addCap(VertexId a, VertexId b, const Rat& c) {
        if (c == 0) {
            return;
        }
        cap[a][b] += c;
        cap[b][a] += c;
    }
};

FlowGraph toFlow(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    FlowGraph net;
    for (VertexId v : g.vertexIds()) {
        net.addNode(v);
    }
    for (const auto& [id, rec] : g.edges()) {
        auto it = cap.find(id);
        if (it == cap.end()) {
            continue;
        }
        require(it->second >= 0, Errc::PreconditionViolated,
                "capacities must be nonnegative");
        net.addCap(rec.u, rec.v, it->second);
    }
    return net;
}

struct FlowResult {
    Rat value;
    // Residual capacities after the maximum flow, both directions.
    std::map<VertexId, std::map<VertexId, Rat>> residual;
};

FlowResult edmondsKarp(const FlowGraph& net, VertexId s, VertexId t) {
    require(net.nodes.count(s) != 0 && net.nodes.count(t) != 0,
            Errc::PreconditionViolated, "flow terminal is not a vertex");
    require(s != t, Errc::SameTerminals, "flow needs two distinct terminals");
    FlowResult out;
    out.value = 0;
    out.residual = net.cap;
    for (;;) {
        // Shortest augmenting path, neighbors in ascending id order.
        std::map<VertexId, VertexId> parent;
        parent[s] = s;
        std::deque<VertexId> queue{s};
        while (!queue.empty() && parent.count(t) == 0) {
            const VertexId x = queue.front();
            queue.pop_front();
            auto it = out.residual.find(x);
            if (it == out.residual.end()) {
                continue;
            }
            for (const auto& [y, r] : it->second) {
                if (r > 0 && parent.count(y) == 0) {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if (parent.count(t) == 0) {
            return out;
        }
        Rat bottleneck;
        bool first = true;
        for (VertexId y = t; y != s; y = parent[y]) {
            const Rat& r = out.residual[parent[y]][y];
            if (first || r < bottleneck) {
                bottleneck = r;
                first = false;
            }
        }
        for (VertexId y = t; y != s; y = parent[y]) {
            out.residual[parent[y]][y] -= bottleneck;
            out.residual[y][parent[y]] += bottleneck;
        }
        out.value += bottleneck;
    }
}

std::set<VertexId> forwardReachable(const FlowResult& f, VertexId s) {
    std::set<VertexId> seen{s};
    std::deque<VertexId> queue{s};
    while (!queue.empty()) {
        const VertexId x = queue.front();
        queue.pop_front();
        auto it = f.residual.find(x);
        if (it == f.residual.end()) {
            continue;
        }
        for (const auto& [y, r] : it->second) {
            if (r > 0 && seen.insert(y).second) {
                queue.push_back(y);
            }
        }
    }
    return seen;
}

// Vertices from which t is reachable through positive residual arcs.
std::set<VertexId> reverseReachable(const FlowResult& f, VertexId t) {
    std::set<VertexId> seen{t};
    std::deque<VertexId> queue{t};
    while (!queue.empty()) {
        const VertexId x = queue.front();
        queue.pop_front();
        auto it = f.residual.find(x);
        if (it == f.residual.end()) {
            continue;
        }
        for (const auto& [y, r] : it->second) {
            (void)r;
            if (seen.count(y) != 0) {
                continue;
            }
            auto back = f.residual.find(y);
            if (back != f.residual.end()) {
                auto arc = back->second.find(x);
                if (arc != back->second.end() && arc->second > 0) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
    }
    return seen;
}

MinCutSide minimalMinCutFlow(const FlowGraph& net, VertexId r, VertexId v) {
    const FlowResult f = edmondsKarp(net, r, v);
    return MinCutSide{f.value, reverseReachable(f, v)};
}

VertexId centralVertexFlow(const FlowGraph& net, const std::set<VertexId>& si,
                           std::map<VertexId, MinCutSide>* cutsOut) {
    require(si.size() >= 2, Errc::PreconditionViolated,
            "central vertex needs at least two vertices");
    for (VertexId v : si) {
        require(net.nodes.count(v) != 0, Errc::PreconditionViolated,
                "set vertex is not in the graph");
    }
    const size_t half = si.size() / 2;
    for (VertexId r : si) {
        std::map<VertexId, MinCutSide> cuts;
        bool central = true;
        for (VertexId v : si) {
            if (v == r) {
                continue;
            }
            MinCutSide cut = minimalMinCutFlow(net, r, v);
            size_t inside = 0;
            for (VertexId x : cut.side) {
                if (si.count(x) != 0) {
                    ++inside;
                }
            }
            if (inside > half) {
                central = false;
                break;
            }
            cuts[v] = std::move(cut);
        }
        if (central) {
            if (cutsOut != nullptr) {
                *cutsOut = std::move(cuts);
            }
            return r;
        }
    }
    fail(Errc::InternalError, "no central vertex found");
}

}

MaxFlowResult maxFlowMinCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                            VertexId s, VertexId t) {
    require(g.hasVertex(s) && g.hasVertex(t), Errc::PreconditionViolated,
            "terminal is not a vertex");
    const FlowGraph net = toFlow(g, cap);
    const FlowResult f = edmondsKarp(net, s, t);
    return MaxFlowResult{f.value, forwardReachable(f, s)};
}

MinCutSide minimalMinCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap,
                         VertexId r, VertexId v) {
    require(g.hasVertex(r) && g.hasVertex(v), Errc::PreconditionViolated,
            "terminal is not a vertex");
    return minimalMinCutFlow(toFlow(g, cap), r, v);
}

VertexId centralVertex(const PlanarGraph& gPrime, const std::map<EdgeId, Rat>& cap,
                       const std::set<VertexId>& si) {
    for (VertexId v : si) {
        require(gPrime.hasVertex(v), Errc::PreconditionViolated,
                "set vertex is not in the graph");
    }
    return centralVertexFlow(toFlow(gPrime, cap), si, nullptr);
}

namespace {

struct SplitPlan {
    bool split = false;
    VertexId r = 0;
    // parts[0] is {r}; later parts follow ascending defining vertex.
    std::vector<std::set<VertexId>> parts;
    // Star edge data for parts[j], j >= 1.
    std::vector<Rat> starWeights;
    std::vector<VertexId> defining;
    // Old neighbor class -> (part index it re-attaches to, witness on this
    // side after the split).
    std::map<int, std::pair<int, VertexId>> attach;
};

struct TreeState {
    std::vector<std::set<VertexId>> classes;
    std::vector<GomoryHuTree::TreeEdge> edges;
};

// Subtrees of the partition tree hanging off class i: for every neighbor
// class, the set of classes in its component of the tree minus i.
std::map<int, std::set<int>> subtreesAt(const TreeState& t, int i) {
    std::map<int, std::vector<int>> adjacent;
    for (const auto& e : t.edges) {
        adjacent[e.a].push_back(e.b);
        adjacent[e.b].push_back(e.a);
    }
    std::map<int, std::set<int>> out;
    for (int start : adjacent[i]) {
        std::set<int>& comp = out[start];
        comp.insert(start);
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (int y : adjacent[x]) {
                if (y != i && comp.insert(y).second) {
                    queue.push_back(y);
                }
            }
        }
    }
    return out;
}

SplitPlan planSplit(const FlowGraph& base, const TreeState& t, int i) {
    SplitPlan plan;
    const std::set<VertexId>& si = t.classes[i];
    if (si.size() < 2) {
        return plan;
    }
    plan.split = true;

    // Shrink each hanging subtree to its smallest original vertex.
    const auto subtrees = subtreesAt(t, i);
    std::map<VertexId, VertexId> group;
    std::map<int, VertexId> repOfNeighbor;
    for (const auto& [neighbor, classSet] : subtrees) {
        VertexId rep = -1;
        for (int c : classSet) {
            for (VertexId x : t.classes[c]) {
                if (rep == -1 || x < rep) {
                    rep = x;
                }
            }
        }
        repOfNeighbor[neighbor] = rep;
        for (int c : classSet) {
            for (VertexId x : t.classes[c]) {
                group[x] = rep;
            }
        }
    }
    for (VertexId x : si) {
        group[x] = x;
    }
    FlowGraph shrunk;
    for (const auto& [x, rep] : group) {
        (void)x;
        shrunk.addNode(rep);
    }
    for (const auto& [a, row] : base.cap) {
        for (const auto& [b, c] : row) {
            if (a < b && group.at(a) != group.at(b)) {
                shrunk.addCap(group.at(a), group.at(b), c);
            }
        }
    }

    std::map<VertexId, MinCutSide> cuts;
    plan.r = centralVertexFlow(shrunk, si, &cuts);

    // Maximal sets of the laminar family of minimal min cuts.
    std::vector<std::pair<VertexId, const MinCutSide*>> entries;
    for (const auto& [v, cut] : cuts) {
        entries.push_back({v, &cut});
    }
    for (size_t a = 0; a < entries.size(); ++a) {
        for (size_t b = a + 1; b < entries.size(); ++b) {
            const auto& sa = entries[a].second->side;
            const auto& sb = entries[b].second->side;
            const bool aInB = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
            const bool bInA = std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
            bool disjoint = true;
            for (VertexId x : sa) {
                if (sb.count(x) != 0) {
                    disjoint = false;
                    break;
                }
            }
            require(aInB || bInA || disjoint, Errc::InternalError,
                    "minimal min cuts to one vertex cross");
        }
    }
    std::vector<std::pair<VertexId, const MinCutSide*>> maximal;
    for (const auto& e : entries) {
        bool covered = false;
        for (const auto& other : entries) {
            if (other.second->side.size() > e.second->side.size() &&
                std::includes(other.second->side.begin(), other.second->side.end(),
                              e.second->side.begin(), e.second->side.end())) {
                covered = true;
                break;
            }
        }
        if (covered) {
            continue;
        }
        // Several vertices can share one maximal set; keep its smallest.
        bool seen = false;
        for (const auto& kept : maximal) {
            if (kept.second->side == e.second->side) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            maximal.push_back(e);
        }
    }

    plan.parts.push_back({plan.r});
    plan.starWeights.push_back(Rat(0));
    plan.defining.push_back(plan.r);
    std::set<VertexId> claimed{plan.r};
    for (const auto& [v, cut] : maximal) {
        std::set<VertexId> part;
        for (VertexId x : cut->side) {
            if (si.count(x) != 0) {
                part.insert(x);
            }
        }
        require(!part.empty() && 2 * part.size() <= si.size(), Errc::InternalError,
                "split part exceeds half the class");
        for (VertexId x : part) {
            require(claimed.insert(x).second, Errc::InternalError,
                    "split parts overlap");
        }
        plan.parts.push_back(std::move(part));
        plan.starWeights.push_back(cut->value);
        plan.defining.push_back(v);
    }
    require(claimed == si, Errc::InternalError, "split parts do not cover the class");

    // Re-attach each hanging subtree to the part whose cut swallowed it.
    for (const auto& [neighbor, rep] : repOfNeighbor) {
        int target = 0;
        for (size_t j = 1; j < plan.parts.size(); ++j) {
            if (maximal[j - 1].second->side.count(rep) != 0) {
                target = static_cast<int>(j);
                break;
            }
        }
        // Keep the old witness when it stays in the attached part; the part's
        // defining vertex takes over otherwise.
        const GomoryHuTree::TreeEdge* old = nullptr;
        for (const auto& e : t.edges) {
            if ((e.a == i && e.b == neighbor) || (e.b == i && e.a == neighbor)) {
                old = &e;
                break;
            }
        }
        require(old != nullptr, Errc::InternalError, "missing tree edge to neighbor");
        const VertexId oldWitness = old->a == i ? old->u : old->v;
        const VertexId witness = plan.parts[target].count(oldWitness) != 0
                                     ? oldWitness
                                     : plan.defining[target];
        plan.attach[neighbor] = {target, witness};
    }
    return plan;
}

}

GomoryHuTree gomoryHuTree(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    require(connectedComponents(g).size() <= 1, Errc::Disconnected,
            "Gomory-Hu tree needs a connected graph");
    GomoryHuTree tree;
    const std::vector<VertexId> vertices = g.vertexIds();
    if (vertices.empty()) {
        return tree;
    }
    const FlowGraph base = toFlow(g, cap);

    long long roundLimit = 0;
    while ((1LL << roundLimit) < static_cast<long long>(vertices.size())) {
        ++roundLimit;
    }

    TreeState state;
    state.classes.push_back(std::set<VertexId>(vertices.begin(), vertices.end()));
    while (true) {
        bool anyLarge = false;
        for (const auto& c : state.classes) {
            anyLarge = anyLarge || c.size() >= 2;
        }
        if (!anyLarge) {
            break;
        }
        ++tree.rounds;
        require(tree.rounds <= roundLimit, Errc::InternalError,
                "class sizes are not halving per round");

        const long long classCount = static_cast<long long>(state.classes.size());
        std::vector<SplitPlan> plans(classCount);
        parallelFor(classCount, [&](long long i) {
            plans[i] = planSplit(base, state, static_cast<int>(i));
        });

        // New class layout: split classes expand into consecutive parts.
        std::vector<int> baseIndex(classCount);
        int next = 0;
        for (long long i = 0; i < classCount; ++i) {
            baseIndex[i] = next;
            next += plans[i].split ? static_cast<int>(plans[i].parts.size()) : 1;
        }
        TreeState replaced;
        replaced.classes.resize(next);
        for (long long i = 0; i < classCount; ++i) {
            if (plans[i].split) {
                for (size_t j = 0; j < plans[i].parts.size(); ++j) {
                    replaced.classes[baseIndex[i] + j] = plans[i].parts[j];
                }
            } else {
                replaced.classes[baseIndex[i]] = state.classes[i];
            }
        }
        for (const auto& e : state.edges) {
            GomoryHuTree::TreeEdge moved = e;
            if (plans[e.a].split) {
                const auto& [part, witness] = plans[e.a].attach.at(e.b);
                moved.a = baseIndex[e.a] + part;
                moved.u = witness;
            } else {
                moved.a = baseIndex[e.a];
            }
            if (plans[e.b].split) {
                const auto& [part, witness] = plans[e.b].attach.at(e.a);
                moved.b = baseIndex[e.b] + part;
                moved.v = witness;
            } else {
                moved.b = baseIndex[e.b];
            }
            replaced.edges.push_back(moved);
        }
        for (long long i = 0; i < classCount; ++i) {
            if (!plans[i].split) {
                continue;
            }
            for (size_t j = 1; j < plans[i].parts.size(); ++j) {
                GomoryHuTree::TreeEdge star;
                star.a = baseIndex[i] + static_cast<int>(j);
                star.b = baseIndex[i];
                star.weight = plans[i].starWeights[j];
                star.u = plans[i].defining[j];
                star.v = plans[i].r;
                replaced.edges.push_back(star);
            }
        }
        state = std::move(replaced);
    }
    tree.nodes = std::move(state.classes);
    tree.treeEdges = std::move(state.edges);
    return tree;
}

OddCut minOddCut(const PlanarGraph& g, const std::map<EdgeId, Rat>& cap) {
    require(g.vertexCount() % 2 == 0, Errc::OddVertexCount,
            "odd cuts need an even vertex count");
    require(g.vertexCount() >= 2, Errc::PreconditionViolated,
            "odd cuts need at least two vertices");
    const GomoryHuTree tree = gomoryHuTree(g, cap);

    std::map<int, std::vector<std::pair<int, size_t>>> adjacent;
    for (size_t k = 0; k < tree.treeEdges.size(); ++k) {
        adjacent[tree.treeEdges[k].a].push_back({tree.treeEdges[k].b, k});
        adjacent[tree.treeEdges[k].b].push_back({tree.treeEdges[k].a, k});
    }

    bool found = false;
    OddCut best;
    auto consider = [&](const std::set<VertexId>& side, const Rat& weight) {
        if (side.size() % 2 == 0) {
            return;
        }
        if (!found || weight < best.weight ||
            (weight == best.weight && side < best.side)) {
            best.side = side;
            best.weight = weight;
            found = true;
        }
    };
    for (size_t k = 0; k < tree.treeEdges.size(); ++k) {
        // Classes on the a-side of the tree once edge k is removed.
        std::set<int> comp{tree.treeEdges[k].a};
        std::deque<int> queue{tree.treeEdges[k].a};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (const auto& [y, via] : adjacent[x]) {
                if (via != k && comp.insert(y).second) {
                    queue.push_back(y);
                }
            }
        }
        std::set<VertexId> side;
        std::set<VertexId> other;
        for (size_t c = 0; c < tree.nodes.size(); ++c) {
            auto& target = comp.count(static_cast<int>(c)) != 0 ? side : other;
            target.insert(tree.nodes[c].begin(), tree.nodes[c].end());
        }
        consider(side, tree.treeEdges[k].weight);
        consider(other, tree.treeEdges[k].weight);
    }
    require(found, Errc::InternalError, "tree has no odd split");
    return best;
}

}

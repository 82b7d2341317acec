#include "planarmatch/graph_algos.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "planarmatch/error.hpp"

namespace planarmatch {

void AbstractGraph::addEdge(int a, int b) {
    require(a != b, Errc::LoopEdge, "abstract graphs are loop free");
    nodes.insert(a);
    nodes.insert(b);
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool AbstractGraph::hasEdge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) != 0;
}

std::vector<int> AbstractGraph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

AbstractGraph inducedSubgraph(const AbstractGraph& g, const std::set<int>& keep) {
    AbstractGraph out;
    for (int v : keep) {
        if (g.nodes.count(v)) out.addNode(v);
    }
    for (const auto& [a, b] : g.edges) {
        if (keep.count(a) && keep.count(b)) out.addEdge(a, b);
    }
    return out;
}

std::vector<std::set<int>> connectedComponents(const AbstractGraph& g) {
    std::vector<std::set<int>> components;
    std::set<int> seen;
    for (int start : g.nodes) {
        if (seen.count(start)) continue;
        std::set<int> component;
        std::vector<int> frontier{start};
        seen.insert(start);
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            component.insert(v);
            for (int w : g.neighbors(v)) {
                if (seen.insert(w).second) frontier.push_back(w);
            }
        }
        components.push_back(std::move(component));
    }
    return components;
}

std::vector<std::set<VertexId>> connectedComponents(const PlanarGraph& g) {
    std::vector<std::set<VertexId>> components;
    std::set<VertexId> seen;
    for (VertexId start : g.vertexIds()) {
        if (seen.count(start)) continue;
        std::set<VertexId> component;
        std::vector<VertexId> frontier{start};
        seen.insert(start);
        while (!frontier.empty()) {
            VertexId v = frontier.back();
            frontier.pop_back();
            component.insert(v);
            for (EdgeId id : g.incidentEdges(v)) {
                VertexId w = g.edge(id).other(v);
                if (seen.insert(w).second) frontier.push_back(w);
            }
        }
        components.push_back(std::move(component));
    }
    return components;
}

std::set<EdgeId> spanningForest(const PlanarGraph& g) {
    std::map<VertexId, VertexId> leader;
    for (VertexId v : g.vertexIds()) leader[v] = v;
    std::function<VertexId(VertexId)> root = [&](VertexId v) {
        while (leader[v] != v) {
            leader[v] = leader[leader[v]];
            v = leader[v];
        }
        return v;
    };
    std::set<EdgeId> forest;
    for (const auto& [id, record] : g.edges()) {
        VertexId a = root(record.u);
        VertexId b = root(record.v);
        if (a == b) continue;
        leader[std::max(a, b)] = std::min(a, b);
        forest.insert(id);
    }
    return forest;
}

std::map<int, int> dfsTree(const AbstractGraph& g, int root) {
    require(g.nodes.count(root) != 0, Errc::InternalError, "dfs root not in graph");
    std::map<int, int> parent;
    parent[root] = root;
    std::function<void(int)> explore = [&](int v) {
        for (int w : g.neighbors(v)) {
            if (!parent.count(w)) {
                parent[w] = v;
                explore(w);
            }
        }
    };
    explore(root);
    return parent;
}

namespace {

struct BlockSearch {
    const AbstractGraph& g;
    std::map<int, int> disc;
    std::map<int, int> low;
    std::vector<std::pair<int, int>> edgeStack;
    std::vector<Block> blocks;
    std::set<int> cuts;
    int timer = 0;

    explicit BlockSearch(const AbstractGraph& graph) : g(graph) {
        for (int v : g.nodes) {
            if (!disc.count(v)) explore(v, -1);
        }
    }

    void explore(int v, int parent) {
        disc[v] = low[v] = ++timer;
        int children = 0;
        for (int w : g.neighbors(v)) {
            if (w == parent) continue;
            if (!disc.count(w)) {
                ++children;
                edgeStack.push_back({v, w});
                explore(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    if (parent != -1 || children > 1) cuts.insert(v);
                    popBlock(v, w);
                }
            } else if (disc[w] < disc[v]) {
                edgeStack.push_back({v, w});
                low[v] = std::min(low[v], disc[w]);
            }
        }
    }

    void popBlock(int v, int w) {
        Block block;
        while (true) {
            auto [a, b] = edgeStack.back();
            edgeStack.pop_back();
            block.vertices.insert(a);
            block.vertices.insert(b);
            block.edges.insert({std::min(a, b), std::max(a, b)});
            if (a == v && b == w) break;
        }
        blocks.push_back(std::move(block));
    }
};

}

std::vector<Block> biconnectedComponents(const AbstractGraph& g) {
    return BlockSearch(g).blocks;
}

std::set<int> cutVertices(const AbstractGraph& g) {
    return BlockSearch(g).cuts;
}

int BlockCutTree::cutNode(int vertex) const {
    auto found = std::lower_bound(cutVerts.begin(), cutVerts.end(), vertex);
    require(found != cutVerts.end() && *found == vertex, Errc::InternalError,
            "vertex is not a cut vertex");
    return static_cast<int>(blocks.size() + (found - cutVerts.begin()));
}

BlockCutTree blockCutTree(const AbstractGraph& g) {
    BlockSearch search(g);
    BlockCutTree out;
    out.blocks = std::move(search.blocks);
    out.cutVerts.assign(search.cuts.begin(), search.cuts.end());
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
        out.tree.addNode(static_cast<int>(i));
        for (int v : out.blocks[i].vertices) {
            if (search.cuts.count(v)) {
                out.tree.addEdge(static_cast<int>(i), out.cutNode(v));
            }
        }
    }
    return out;
}

std::vector<std::vector<int>> openEarDecomposition(const AbstractGraph& g) {
    if (g.nodeCount() < 3 || g.edgeCount() < 2 || connectedComponents(g).size() != 1 ||
        !cutVertices(g).empty()) {
        fail(Errc::NotBiconnected, "open ear decomposition needs a biconnected input");
    }

    // Chain decomposition: walk each back edge from its upper endpoint, then
    // climb parent pointers until reaching a vertex already on some chain.
    // On a biconnected graph the first chain is a cycle and every later
    // chain is an open ear.
    int root = *g.nodes.begin();
    std::map<int, int> parent;
    std::vector<int> order;
    parent[root] = root;
    std::function<void(int)> explore = [&](int v) {
        order.push_back(v);
        for (int w : g.neighbors(v)) {
            if (!parent.count(w)) {
                parent[w] = v;
                explore(w);
            }
        }
    };
    explore(root);
    std::map<int, int> discOf;
    for (std::size_t i = 0; i < order.size(); ++i) discOf[order[i]] = static_cast<int>(i);

    std::set<int> onChain;
    std::set<std::pair<int, int>> coveredEdges;
    std::vector<std::vector<int>> ears;
    for (int v : order) {
        for (int w : g.neighbors(v)) {
            bool backFromBelow = discOf.at(w) > discOf.at(v) && parent.at(w) != v;
            if (!backFromBelow) continue;
            std::vector<int> chain{v};
            onChain.insert(v);
            coveredEdges.insert({std::min(v, w), std::max(v, w)});
            int climb = w;
            while (!onChain.count(climb)) {
                onChain.insert(climb);
                chain.push_back(climb);
                int up = parent.at(climb);
                coveredEdges.insert({std::min(climb, up), std::max(climb, up)});
                climb = up;
            }
            if (ears.empty()) {
                // The first chain climbs all the way back to v, closing the
                // cycle; v is already first, so the walk stops there.
                require(climb == v, Errc::InternalError, "first chain did not close a cycle");
            } else {
                require(climb != v, Errc::NotBiconnected, "chain closed a second cycle");
                chain.push_back(climb);
            }
            ears.push_back(std::move(chain));
        }
    }
    require(coveredEdges.size() == g.edges.size(), Errc::NotBiconnected,
            "some edge lies on no chain");
    return ears;
}

}

#include "planarmatch/uncross.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "planarmatch/cuts.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/parallel.hpp"

namespace planarmatch {

namespace {

Rat ratOf(long long v) { return Rat(static_cast<long>(v)); }

Rat valueAt(const FractionalPoint& x, EdgeId e) {
    auto it = x.find(e);
    return it == x.end() ? Rat(0) : it->second;
}

// Checks emptiness, oddness, vertex existence and the exact cut equation,
// and hands back the certificate. The error code separates caller mistakes
// from broken internal guarantees.
Rat certifyTightOdd(const PlanarGraph& g, const FractionalPoint& x,
                    const std::set<VertexId>& s, Errc code, const char* what) {
    require(!s.empty() && s.size() % 2 == 1, code, what);
    for (VertexId v : s) require(g.hasVertex(v), code, what);
    Rat value = cutValue(g, x, s);
    require(value == Rat(1), code, what);
    return value;
}

std::size_t intersectionSize(const std::set<VertexId>& a, const std::set<VertexId>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::size_t count = 0;
    for (VertexId v : small) count += large.count(v);
    return count;
}

std::set<VertexId> unionOf(const std::vector<TightOddSet>& nodes, const std::set<int>& idx) {
    std::set<VertexId> out;
    for (int i : idx) out.insert(nodes[i].vertices.begin(), nodes[i].vertices.end());
    return out;
}

void sortByVertices(std::vector<TightOddSet>& sets) {
    std::sort(sets.begin(), sets.end(), [](const TightOddSet& a, const TightOddSet& b) {
        return a.vertices < b.vertices;
    });
}

bool isBipartite(const AbstractGraph& g) {
    std::map<int, int> color;
    for (int start : g.nodes) {
        if (color.count(start)) continue;
        color[start] = 0;
        std::vector<int> frontier{start};
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int w : g.neighbors(v)) {
                auto [it, fresh] = color.insert({w, color[v] ^ 1});
                if (fresh) {
                    frontier.push_back(w);
                } else if (it->second == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Node count plus induced edge count mod 2, the quantity the uncrossing
// lemmas track for sub-collections.
int collectionParity(const AbstractGraph& g, const std::set<int>& u) {
    std::size_t edges = 0;
    for (const auto& [a, b] : g.edges) {
        if (u.count(a) && u.count(b)) ++edges;
    }
    return static_cast<int>((u.size() + edges) % 2);
}

// Breadth-first order from the smallest node, so every prefix induces a
// connected subgraph. neighbors() lists partners ascending, which keeps
// the layer order deterministic.
std::vector<int> connectedPrefixOrder(const AbstractGraph& g) {
    std::vector<int> order;
    std::set<int> seen;
    std::deque<int> queue;
    int start = *g.nodes.begin();
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int w : g.neighbors(v)) {
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return order;
}

std::map<int, int> bfsParents(const AbstractGraph& tree, int root) {
    std::map<int, int> parent{{root, root}};
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : tree.neighbors(v)) {
            if (parent.insert({w, v}).second) queue.push_back(w);
        }
    }
    return parent;
}

std::vector<int> treePath(const AbstractGraph& tree, int from, int to) {
    auto parent = bfsParents(tree, from);
    require(parent.count(to), Errc::InternalError, "tree path endpoints are disconnected");
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
}

// Nodes reachable from start without crossing the edge (banA, banB).
std::set<int> reachableAvoiding(const AbstractGraph& g, int start, int banA, int banB) {
    std::set<int> seen{start};
    std::deque<int> queue{start};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if ((v == banA && w == banB) || (v == banB && w == banA)) continue;
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return seen;
}

}

IntersectionParityGraph intersectionParityGraph(std::vector<TightOddSet> sets) {
    std::map<VertexId, int> owners;
    for (const TightOddSet& s : sets) {
        require(!s.vertices.empty() && s.vertices.size() % 2 == 1, Errc::PreconditionViolated,
                "parity graph nodes must be nonempty odd sets");
        for (VertexId v : s.vertices) {
            require(++owners[v] <= 2, Errc::PreconditionViolated,
                    "a vertex lies in three of the sets");
        }
    }
    IntersectionParityGraph h;
    h.nodes = std::move(sets);
    const int count = static_cast<int>(h.nodes.size());
    for (int i = 0; i < count; ++i) h.graph.addNode(i);
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            if (intersectionSize(h.nodes[i].vertices, h.nodes[j].vertices) % 2 == 1) {
                h.graph.addEdge(i, j);
            }
        }
    }
    require(isBipartite(h.graph), Errc::PreconditionViolated,
            "intersection parity graph must be bipartite");
    require(owners.size() % 2
                    == (h.nodes.size() + h.graph.edges.size()) % 2,
            Errc::InternalError, "parity bookkeeping broke");
    return h;
}

TightOddSet findBlockingOddSet(const PlanarGraph& g, const FractionalPoint& x,
                               const EvenWalk& walk, const Int& matchingCount) {
    AlternatingVector chi = alternatingVector(walk);
    for (const auto& entry : chi.coef) {
        require(g.hasEdge(entry.first), Errc::MalformedWalk, "walk edge missing from the graph");
        require(valueAt(x, entry.first) > Rat(0), Errc::NoViolation,
                "a walk edge left the support");
    }
    const Rat eps = rotationEpsilon(g.vertexCount(), matchingCount);
    const FractionalPoint y = rotate(x, walk, eps);
    const OddCut cut = minOddCut(g, y);
    const Rat xCut = cutValue(g, x, cut.side);
    long long chiCut = 0;
    for (const auto& [e, coef] : chi.coef) {
        const Edge& edge = g.edge(e);
        if (cut.side.count(edge.u) + cut.side.count(edge.v) == 1) chiCut += coef;
    }
    require(xCut == Rat(1) && chiCut != 0, Errc::NoViolation,
            "rotation is not blocked by an odd set");
    return TightOddSet{cut.side, xCut};
}

void checkBalancedViable(const IntersectionParityGraph& h, const std::set<int>& u,
                         const PlanarGraph& g, const FractionalPoint& x,
                         const VertexMap& f, const Rat& c1) {
    require(!u.empty(), Errc::PreconditionViolated, "balance check needs nodes");
    for (int i : u) {
        require(0 <= i && i < static_cast<int>(h.nodes.size()), Errc::PreconditionViolated,
                "balance check node index out of range");
    }
    const AbstractGraph induced = inducedSubgraph(h.graph, u);
    require(connectedComponents(induced).size() == 1, Errc::PreconditionViolated,
            "balance check needs a connected sub-collection");

    const Rat total = ratOf(f.originalCount());
    const std::set<VertexId> whole = unionOf(h.nodes, u);
    if (ratOf(f.preimageCount(whole)) < c1 * total) return;

    auto escape = [&](const std::set<VertexId>& s) {
        certifyTightOdd(g, x, s, Errc::InternalError,
                        "balanced viable candidate is not tight odd");
        std::set<VertexId> lifted;
        for (VertexId v : s) {
            const std::set<VertexId> pre = f.preimage(v);
            lifted.insert(pre.begin(), pre.end());
        }
        throw EarlyExit{std::move(lifted)};
    };

    if (ratOf(f.preimageCount(whole)) <= (Rat(1) - c1) * total) escape(whole);

    // The union is too big to hand out whole. Grow a connected prefix until
    // its preimage reaches 2 c1 of the original count; with every node below
    // c1 the crossing prefix stays below 3 c1, which is balanced.
    const std::vector<int> order = connectedPrefixOrder(induced);
    std::set<int> prefix;
    std::set<VertexId> running;
    bool crossed = false;
    for (int i : order) {
        prefix.insert(i);
        running.insert(h.nodes[i].vertices.begin(), h.nodes[i].vertices.end());
        if (ratOf(f.preimageCount(running)) >= Rat(2) * c1 * total) {
            crossed = true;
            break;
        }
    }
    require(crossed, Errc::InternalError, "prefix scan never reached the threshold");
    if (running.size() % 2 == 1) escape(running);

    const auto [first, second] = evenSplit(inducedSubgraph(induced, prefix));
    const std::set<VertexId> a = unionOf(h.nodes, first);
    const std::set<VertexId> b = unionOf(h.nodes, second);
    escape(f.preimageCount(a) >= f.preimageCount(b) ? a : b);
}

std::pair<std::set<int>, std::set<int>> evenSplit(const AbstractGraph& component) {
    require(!component.nodes.empty(), Errc::PreconditionViolated, "even split needs nodes");
    require(connectedComponents(component).size() == 1, Errc::PreconditionViolated,
            "even split runs on a single component");
    require((component.nodes.size() + component.edges.size()) % 2 == 0, Errc::BadParity,
            "component has odd node plus edge count");

    const BlockCutTree bct = blockCutTree(component);
    // A block gets label 1 when its node-plus-edge count is even; labels of
    // the blocks in any subtree add up, mod 2, to the inverse parity of the
    // union of those blocks.
    std::vector<int> ones;
    for (std::size_t i = 0; i < bct.blocks.size(); ++i) {
        const Block& b = bct.blocks[i];
        if ((b.vertices.size() + b.edges.size() + 1) % 2 == 1) ones.push_back(static_cast<int>(i));
    }
    require(ones.size() % 2 == 1, Errc::InternalError, "block label parity broke");

    std::set<int> first;
    std::set<int> second;
    auto addBlocks = [&](const std::set<int>& treeNodes, std::set<int>& piece) {
        for (int n : treeNodes) {
            if (n < static_cast<int>(bct.blocks.size())) {
                const Block& b = bct.blocks[n];
                piece.insert(b.vertices.begin(), b.vertices.end());
            }
        }
    };

    if (ones.size() >= 3) {
        // Two labeled blocks at maximum tree distance; every other labeled
        // block then sits between them, so chopping the path edge next to
        // either end leaves an even label total on the far side.
        int bestA = -1;
        int bestB = -1;
        int bestDist = -1;
        for (std::size_t i = 0; i < ones.size(); ++i) {
            for (std::size_t j = i + 1; j < ones.size(); ++j) {
                const std::vector<int> path =
                        treePath(bct.tree, bct.blockNode(ones[i]), bct.blockNode(ones[j]));
                const int dist = static_cast<int>(path.size()) - 1;
                if (dist > bestDist) {
                    bestDist = dist;
                    bestA = ones[i];
                    bestB = ones[j];
                }
            }
        }
        const std::vector<int> path =
                treePath(bct.tree, bct.blockNode(bestA), bct.blockNode(bestB));
        addBlocks(reachableAvoiding(bct.tree, path.back(), path[0], path[1]), first);
        addBlocks(reachableAvoiding(bct.tree, path[0], path[path.size() - 2], path.back()),
                  second);
    } else {
        // One labeled block. Split it at a seed, then hang every other
        // block on the side holding its cut vertex; unlabeled blocks do
        // not change the parity of either side.
        const int home = ones[0];
        const Block& b = bct.blocks[home];
        AbstractGraph bg;
        for (int v : b.vertices) bg.addNode(v);
        for (const auto& [p, q] : b.edges) bg.addEdge(p, q);

        std::set<int> seed;
        for (int v : bg.nodes) {
            if (bg.neighbors(v).size() % 2 == 0) {
                seed.insert(v);
                break;
            }
        }
        if (seed.empty()) {
            // Every degree is odd; take the two leading vertices of the
            // last ear that still carries an interior vertex.
            const auto ears = openEarDecomposition(bg);
            std::size_t pick = 0;
            for (std::size_t i = 1; i < ears.size(); ++i) {
                if (ears[i].size() >= 3) pick = i;
            }
            seed.insert(ears[pick][0]);
            seed.insert(ears[pick][1]);
        }
        first = seed;
        for (int v : b.vertices) {
            if (!seed.count(v)) second.insert(v);
        }
        const int homeNode = bct.blockNode(home);
        for (int nbr : bct.tree.neighbors(homeNode)) {
            const int cutVertex = bct.cutVerts[nbr - static_cast<int>(bct.blocks.size())];
            std::set<int>& piece = seed.count(cutVertex) ? first : second;
            addBlocks(reachableAvoiding(bct.tree, nbr, homeNode, nbr), piece);
        }
    }

    auto validatePiece = [&](const std::set<int>& piece) {
        require(!piece.empty(), Errc::InternalError, "split piece is empty");
        const AbstractGraph sub = inducedSubgraph(component, piece);
        require(connectedComponents(sub).size() == 1, Errc::InternalError,
                "split piece is disconnected");
        require((piece.size() + sub.edges.size()) % 2 == 1, Errc::InternalError,
                "split piece parity is even");
    };
    validatePiece(first);
    validatePiece(second);
    std::set<int> covered = first;
    covered.insert(second.begin(), second.end());
    require(covered == component.nodes, Errc::InternalError, "split pieces fail to cover");
    return {first, second};
}

std::vector<TightOddSet> mergeUncross(std::vector<TightOddSet> r, std::vector<TightOddSet> c,
                                      const PlanarGraph& g, const FractionalPoint& x,
                                      const VertexMap& f, const Rat& c1) {
    sortByVertices(r);
    sortByVertices(c);
    auto verifyFamily = [&](const std::vector<TightOddSet>& family, const char* what) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            certifyTightOdd(g, x, family[i].vertices, Errc::PreconditionViolated, what);
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                require(intersectionSize(family[i].vertices, family[j].vertices) == 0,
                        Errc::PreconditionViolated, "merge family members overlap");
            }
        }
    };
    verifyFamily(r, "merge input is not tight odd");
    verifyFamily(c, "merge input is not tight odd");

    // Empty every even intersection by removing the r side from the c
    // side. A c set meets each r set in a different part, so the removals
    // are disjoint and the remainder keeps odd size; it stays tight, which
    // we verify rather than trust.
    parallelFor(c.size(), [&](std::size_t j) {
        bool changed = false;
        for (const TightOddSet& ri : r) {
            const std::size_t common = intersectionSize(ri.vertices, c[j].vertices);
            if (common == 0 || common % 2 == 1) continue;
            for (VertexId v : ri.vertices) c[j].vertices.erase(v);
            changed = true;
        }
        if (changed) {
            c[j].certificate = certifyTightOdd(g, x, c[j].vertices, Errc::InternalError,
                                               "subtracted set is not tight odd");
        }
    });

    std::vector<TightOddSet> all = std::move(r);
    all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    const IntersectionParityGraph h = intersectionParityGraph(std::move(all));
    const std::vector<std::set<int>> comps = connectedComponents(h.graph);

    std::vector<std::vector<TightOddSet>> slots(comps.size());
    parallelFor(comps.size(), [&](std::size_t k) {
        const std::set<int>& comp = comps[k];
        const std::set<VertexId> whole = unionOf(h.nodes, comp);
        const int parity = collectionParity(h.graph, comp);
        require(static_cast<int>(whole.size() % 2) == parity, Errc::InternalError,
                "parity bookkeeping broke");
        if (parity == 1) {
            checkBalancedViable(h, comp, g, x, f, c1);
            const Rat cert = certifyTightOdd(g, x, whole, Errc::InternalError,
                                             "component union is not tight odd");
            slots[k].push_back(TightOddSet{whole, cert});
            return;
        }
        const auto [first, second] = evenSplit(inducedSubgraph(h.graph, comp));
        checkBalancedViable(h, first, g, x, f, c1);
        checkBalancedViable(h, second, g, x, f, c1);
        const std::set<VertexId> a = unionOf(h.nodes, first);
        std::set<VertexId> b;
        for (VertexId v : unionOf(h.nodes, second)) {
            if (!a.count(v)) b.insert(v);
        }
        const Rat certA = certifyTightOdd(g, x, a, Errc::InternalError,
                                          "first split union is not tight odd");
        const Rat certB = certifyTightOdd(g, x, b, Errc::InternalError,
                                          "second split remainder is not tight odd");
        slots[k].push_back(TightOddSet{a, certA});
        slots[k].push_back(TightOddSet{b, certB});
    });

    std::vector<TightOddSet> out;
    std::map<VertexId, int> owners;
    for (std::vector<TightOddSet>& slot : slots) {
        for (TightOddSet& s : slot) {
            for (VertexId v : s.vertices) {
                require(++owners[v] <= 1, Errc::InternalError, "merge outputs overlap");
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

std::vector<TightOddSet> uncrossRange(const std::vector<TightOddSet>& sets, std::size_t lo,
                                      std::size_t hi, const PlanarGraph& g,
                                      const FractionalPoint& x, const VertexMap& f,
                                      const Rat& c1) {
    if (hi - lo == 1) return {sets[lo]};
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    std::vector<TightOddSet> left;
    std::vector<TightOddSet> right;
    parallelInvoke([&] { left = uncrossRange(sets, lo, mid, g, x, f, c1); },
                   [&] { right = uncrossRange(sets, mid, hi, g, x, f, c1); });
    return mergeUncross(std::move(left), std::move(right), g, x, f, c1);
}

}

std::vector<TightOddSet> uncross(std::vector<TightOddSet> sets, const PlanarGraph& g,
                                 const FractionalPoint& x, const VertexMap& f,
                                 const Rat& c1) {
    require(Rat(0) < c1 && c1 < Rat(1), Errc::PreconditionViolated,
            "c1 must sit strictly between zero and one");
    if (sets.empty()) return {};
    const Rat bound = c1 * ratOf(f.originalCount());
    for (const TightOddSet& s : sets) {
        certifyTightOdd(g, x, s.vertices, Errc::PreconditionViolated,
                        "uncross input is not tight odd");
        require(ratOf(f.preimageCount(s.vertices)) < bound, Errc::PreconditionViolated,
                "uncross input preimage is too large");
    }
    sortByVertices(sets);
    return uncrossRange(sets, 0, sets.size(), g, x, f, c1);
}

}

#include "planarmatch/pfaffian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "planarmatch/error.hpp"
#include "planarmatch/graph_algos.hpp"
#include "planarmatch/parallel.hpp"

namespace planarmatch {

namespace {

// Largest number of interpolation points before the engine switches to a
// single evaluation at a power of two and reads coefficients off as digits.
constexpr long long kMaxPoints = 257;

// Guard against weight ranges that would make even the digit route blow up.
constexpr long long kMaxDegree = 1LL << 22;

Int intPow(const Int& base, long long exponent) {
    require(exponent >= 0, Errc::InternalError, "negative exponent");
    Int result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(exponent));
    return result;
}

Int divExact(const Int& numerator, const Int& denominator) {
    Int quotient;
    Int remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(),
                numerator.get_mpz_t(), denominator.get_mpz_t());
    require(remainder == 0, Errc::InternalError, "inexact division in elimination");
    return quotient;
}

}

void IntPolynomial::add(long long degree, const Int& value) {
    if (value == 0) {
        return;
    }
    auto it = coeff.find(degree);
    if (it == coeff.end()) {
        coeff.emplace(degree, value);
        return;
    }
    it->second += value;
    if (it->second == 0) {
        coeff.erase(it);
    }
}

long long IntPolynomial::lowestDegree() const {
    require(!coeff.empty(), Errc::InternalError, "degree of the zero polynomial");
    return coeff.begin()->first;
}

long long IntPolynomial::highestDegree() const {
    require(!coeff.empty(), Errc::InternalError, "degree of the zero polynomial");
    return coeff.rbegin()->first;
}

Int IntPolynomial::at(long long degree) const {
    auto it = coeff.find(degree);
    return it == coeff.end() ? Int{0} : it->second;
}

Int IntPolynomial::evaluate(const Int& point) const {
    // Horner over the sparse degrees, highest first.
    Int acc{0};
    long long lastDegree = 0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
        if (acc != 0) {
            acc *= intPow(point, lastDegree - it->first);
        }
        acc += it->second;
        lastDegree = it->first;
    }
    if (acc != 0) {
        acc *= intPow(point, lastDegree);
    }
    return acc;
}

PfaffianOrientation fktOrient(const PlanarGraph& g) {
    require(connectedComponents(g).size() <= 1, Errc::Disconnected,
            "orientation needs a connected graph");
    PfaffianOrientation o;
    if (g.edgeCount() == 0) {
        return o;
    }

    // Tree edges keep their stored direction; only the remaining edges are
    // adjusted by the face parity pass below.
    const std::set<EdgeId> tree = spanningForest(g);
    for (EdgeId e : tree) {
        const Edge& rec = g.edge(e);
        o.direction[e] = {rec.u, rec.v};
    }

    const auto orbits = g.faceOrbits();
    const int faceCount = static_cast<int>(orbits.size());
    if (faceCount == 1) {
        require(static_cast<int>(tree.size()) == g.edgeCount(), Errc::InternalError,
                "single face but edges outside the tree");
        return o;
    }

    // The edges outside the spanning tree connect the faces into a tree of
    // their own. Root it at face 0 and walk it depth first, smaller edge ids
    // first, so the construction is reproducible.
    const DualGraph dual = g.dual();
    std::vector<std::vector<std::pair<int, EdgeId>>> adjacent(faceCount);
    int cotreeCount = 0;
    for (const auto& arc : dual.arcs) {
        if (tree.count(arc.primal) != 0) {
            continue;
        }
        adjacent[arc.a].push_back({arc.b, arc.primal});
        adjacent[arc.b].push_back({arc.a, arc.primal});
        ++cotreeCount;
    }
    require(cotreeCount == faceCount - 1, Errc::InternalError,
            "cotree size disagrees with the face count");
    for (auto& list : adjacent) {
        std::sort(list.begin(), list.end(),
                  [](const auto& x, const auto& y) { return x.second < y.second; });
    }

    std::vector<int> order;
    std::vector<EdgeId> parentArc(faceCount, -1);
    std::vector<bool> visited(faceCount, false);
    std::vector<int> stack{0};
    visited[0] = true;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        order.push_back(f);
        // Reverse push so smaller edge ids come off the stack first.
        for (auto it = adjacent[f].rbegin(); it != adjacent[f].rend(); ++it) {
            if (visited[it->first]) {
                continue;
            }
            visited[it->first] = true;
            parentArc[it->first] = it->second;
            stack.push_back(it->first);
        }
    }
    require(static_cast<int>(order.size()) == faceCount, Errc::InternalError,
            "edges outside the tree do not span the dual");

    // Children before parents: every edge of a face other than its parent
    // arc is already oriented once the descendants are done.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int f = *it;
        if (f == 0) {
            continue;
        }
        const EdgeId fix = parentArc[f];
        int agree = 0;
        VertexId fixHost = -1;
        for (const Dart& d : orbits[f]) {
            const VertexId host = g.dartVertex(d);
            if (d.edge == fix) {
                require(fixHost == -1, Errc::InternalError,
                        "parent arc appears twice on one face");
                fixHost = host;
                continue;
            }
            auto dir = o.direction.find(d.edge);
            require(dir != o.direction.end(), Errc::InternalError,
                    "face processed before its descendants");
            if (dir->second.first == host) {
                ++agree;
            }
        }
        require(fixHost != -1, Errc::InternalError, "parent arc missing from face");
        const Edge& rec = g.edge(fix);
        if (agree % 2 == 0) {
            o.direction[fix] = {fixHost, rec.other(fixHost)};
        } else {
            o.direction[fix] = {rec.other(fixHost), fixHost};
        }
    }
    return o;
}

bool checkFkt(const PlanarGraph& g, const PfaffianOrientation& o) {
    require(connectedComponents(g).size() <= 1, Errc::Disconnected,
            "orientation check needs a connected graph");
    for (const auto& [id, rec] : g.edges()) {
        auto it = o.direction.find(id);
        require(it != o.direction.end(), Errc::PreconditionViolated,
                "orientation misses an edge");
        const auto& [tail, head] = it->second;
        require(rec.touches(tail) && rec.touches(head) && tail != head,
                Errc::PreconditionViolated, "orientation names wrong endpoints");
    }
    const auto orbits = g.faceOrbits();
    for (size_t f = 1; f < orbits.size(); ++f) {
        int agree = 0;
        for (const Dart& d : orbits[f]) {
            if (o.direction.at(d.edge).first == g.dartVertex(d)) {
                ++agree;
            }
        }
        if (agree % 2 == 0) {
            return false;
        }
    }
    return true;
}

PolyMatrix buildTutteMatrix(const PlanarGraph& g, const PfaffianOrientation& o,
                            const std::map<EdgeId, long long>& w) {
    const std::vector<VertexId> vertices = g.vertexIds();
    std::map<VertexId, int> index;
    for (size_t i = 0; i < vertices.size(); ++i) {
        index[vertices[i]] = static_cast<int>(i);
    }
    PolyMatrix b(vertices.size(), std::vector<IntPolynomial>(vertices.size()));
    for (const auto& [id, rec] : g.edges()) {
        auto it = o.direction.find(id);
        require(it != o.direction.end(), Errc::PreconditionViolated,
                "orientation misses an edge");
        auto wit = w.find(id);
        const long long weight = wit == w.end() ? 0 : wit->second;
        require(weight >= 0, Errc::NegativeWeight, "matrix weights must be nonnegative");
        const int i = index.at(it->second.first);
        const int j = index.at(it->second.second);
        b[i][j].add(weight, Int{1});
        b[j][i].add(weight, Int{-1});
    }
    return b;
}

namespace {

// Fraction-free triangularization; every division is exact.
Int bareissDet(std::vector<std::vector<Int>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) {
        return Int{1};
    }
    Int prev{1};
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r) {
            if (a[r][k] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            return Int{0};
        }
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                a[r][c] = divExact(a[k][k] * a[r][c] - a[r][k] * a[k][c], prev);
            }
            a[r][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? prev : Int{-prev};
}

// Fraction-free Gauss-Jordan on [a | I]. Leaves det and adj = det * a^{-1};
// returns false when a is singular.
bool detAndAdjugate(const std::vector<std::vector<Int>>& input, Int& det,
                    std::vector<std::vector<Int>>& adj) {
    const int n = static_cast<int>(input.size());
    std::vector<std::vector<Int>> m(n, std::vector<Int>(2 * n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            m[r][c] = input[r][c];
        }
        m[r][n + r] = 1;
    }
    Int prev{1};
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r) {
            if (m[r][k] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            return false;
        }
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (int r = 0; r < n; ++r) {
            if (r == k) {
                continue;
            }
            for (int c = 0; c < 2 * n; ++c) {
                if (c == k) {
                    continue;
                }
                m[r][c] = divExact(m[k][k] * m[r][c] - m[r][k] * m[k][c], prev);
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    // The left block is now prev * I and the right block prev * a^{-1}, so
    // multiplying by the tracked sign turns it into the adjugate.
    det = sign > 0 ? prev : Int{-prev};
    adj.assign(n, std::vector<Int>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            adj[r][c] = sign > 0 ? m[r][n + c] : Int{-m[r][n + c]};
        }
    }
    // Spot check one column of a * adj = det * I.
    for (int r = 0; r < n && n > 0; ++r) {
        Int s{0};
        for (int c = 0; c < n; ++c) {
            s += input[r][c] * adj[c][0];
        }
        require(s == (r == 0 ? det : Int{0}), Errc::InternalError,
                "adjugate fails the product identity");
    }
    return true;
}

// Exact interpolation through (1, values[0]), (2, values[1]), ... using the
// Newton form; the result must have integer coefficients.
IntPolynomial interpolate(const std::vector<Int>& values) {
    const int p = static_cast<int>(values.size());
    require(p > 0, Errc::InternalError, "interpolation needs a point");
    std::vector<Rat> table(p);
    for (int i = 0; i < p; ++i) {
        table[i] = Rat(values[i]);
    }
    std::vector<Rat> newton{table[0]};
    for (int level = 1; level < p; ++level) {
        for (int i = 0; i + level < p; ++i) {
            table[i] = (table[i + 1] - table[i]) / Rat(level);
        }
        table.resize(p - level);
        newton.push_back(table[0]);
    }
    std::vector<Rat> poly(p, Rat(0));
    std::vector<Rat> basis{Rat(1)};
    for (int k = 0; k < p; ++k) {
        for (size_t i = 0; i < basis.size(); ++i) {
            poly[i] += newton[k] * basis[i];
        }
        if (k + 1 < p) {
            // basis *= (x - (k + 1))
            basis.push_back(Rat(0));
            for (size_t i = basis.size() - 1; i > 0; --i) {
                basis[i] = basis[i - 1] - Rat(k + 1) * basis[i];
            }
            basis[0] *= Rat(-(k + 1));
        }
    }
    IntPolynomial result;
    for (int i = 0; i < p; ++i) {
        if (poly[i] == 0) {
            continue;
        }
        require(poly[i].get_den() == 1, Errc::InternalError,
                "interpolated coefficient is not an integer");
        result.add(i, poly[i].get_num());
    }
    return result;
}

std::vector<std::vector<Int>> evaluateMatrix(const PolyMatrix& b, const Int& y) {
    const int n = static_cast<int>(b.size());
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a[r][c] = b[r][c].evaluate(y);
        }
    }
    return a;
}

long long degreeBound(const PolyMatrix& b) {
    long long total = 0;
    for (const auto& row : b) {
        long long rowMax = 0;
        for (const auto& entry : row) {
            if (!entry.isZero()) {
                rowMax = std::max(rowMax, entry.highestDegree());
            }
        }
        total += rowMax;
    }
    return total;
}

}

IntPolynomial polyDeterminant(const PolyMatrix& b) {
    const size_t n = b.size();
    for (const auto& row : b) {
        require(row.size() == n, Errc::PreconditionViolated, "matrix is not square");
    }
    if (n == 0) {
        IntPolynomial one;
        one.add(0, Int{1});
        return one;
    }
    const long long bound = degreeBound(b);
    require(bound <= kMaxDegree, Errc::WeightTooLarge,
            "determinant degree bound is too large");
    const long long points = bound + 1;
    std::vector<Int> values(points);
    parallelFor(points, [&](long long k) {
        values[k] = bareissDet(evaluateMatrix(b, Int(static_cast<long>(k + 1))));
    });
    return interpolate(values);
}

namespace {

// Weights are shifted so their minimum is zero and divided by their gcd.
// Perfect matchings all use |V| / 2 edges, so the minimum-weight family is
// unchanged and the true minimum is recovered affinely afterwards.
struct NormalPlan {
    std::map<EdgeId, long long> w;
    long long shift = 0;
    long long gcd = 1;
};

NormalPlan normalizeWeights(const PlanarGraph& g, const std::map<EdgeId, long long>& w) {
    NormalPlan plan;
    if (g.edgeCount() == 0) {
        return plan;
    }
    bool first = true;
    for (const auto& [id, rec] : g.edges()) {
        (void)rec;
        auto it = w.find(id);
        const long long weight = it == w.end() ? 0 : it->second;
        plan.w[id] = weight;
        if (first || weight < plan.shift) {
            plan.shift = weight;
        }
        first = false;
    }
    long long g0 = 0;
    for (auto& [id, weight] : plan.w) {
        weight -= plan.shift;
        g0 = std::gcd(g0, weight);
    }
    plan.gcd = g0 == 0 ? 1 : g0;
    for (auto& [id, weight] : plan.w) {
        weight /= plan.gcd;
    }
    return plan;
}

struct ComponentCounts {
    bool hasPM = false;
    long long d = 0;
    Int m{0};
    std::map<EdgeId, Int> perEdge;
};

struct PointEval {
    Int det{0};
    // det of the matrix with one edge's monomial removed, per edge.
    std::map<EdgeId, Int> edgeDet;
};

PointEval evaluatePoint(const PolyMatrix& b, const Int& y, bool perEdgeNeeded,
                        const PlanarGraph& g, const PfaffianOrientation& o,
                        const std::map<EdgeId, long long>& w,
                        const std::map<VertexId, int>& index) {
    PointEval ev;
    auto a = evaluateMatrix(b, y);
    if (!perEdgeNeeded) {
        ev.det = bareissDet(std::move(a));
        return ev;
    }
    std::vector<std::vector<Int>> adj;
    if (!detAndAdjugate(a, ev.det, adj)) {
        ev.det = 0;
        return ev;
    }
    // Removing edge e changes two symmetric entries by the monomial t, a
    // rank-two update, so det(B_e) = (det - t * adj[head][tail])^2 / det.
    for (const auto& [id, rec] : g.edges()) {
        (void)rec;
        const auto& [tail, head] = o.direction.at(id);
        const Int t = intPow(y, w.at(id));
        const Int num = ev.det - t * adj[index.at(head)][index.at(tail)];
        ev.edgeDet[id] = divExact(num * num, ev.det);
    }
    return ev;
}

// Reads the coefficients of a polynomial known to have coefficients in
// [0, base) off the digits of its value at base.
IntPolynomial digitsToPoly(Int value, const Int& base) {
    require(value >= 0, Errc::InternalError, "digit extraction of a negative value");
    IntPolynomial poly;
    long long degree = 0;
    while (value != 0) {
        Int digit;
        Int rest;
        mpz_tdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(),
                    value.get_mpz_t(), base.get_mpz_t());
        poly.add(degree, digit);
        value = rest;
        ++degree;
        require(degree <= kMaxDegree, Errc::InternalError, "runaway digit extraction");
    }
    return poly;
}

ComponentCounts countComponent(const PlanarGraph& comp,
                               const std::map<EdgeId, long long>& wOrig,
                               bool perEdgeNeeded) {
    ComponentCounts res;
    const int n = comp.vertexCount();
    if (n % 2 != 0) {
        return res;
    }
    const NormalPlan plan = normalizeWeights(comp, wOrig);
    const PfaffianOrientation o = fktOrient(comp);
    const PolyMatrix b = buildTutteMatrix(comp, o, plan.w);
    const std::vector<VertexId> vertices = comp.vertexIds();
    std::map<VertexId, int> index;
    for (size_t i = 0; i < vertices.size(); ++i) {
        index[vertices[i]] = static_cast<int>(i);
    }

    const long long bound = degreeBound(b);
    require(bound <= kMaxDegree, Errc::WeightTooLarge,
            "weight range too large for exact counting");

    IntPolynomial detPoly;
    std::map<EdgeId, IntPolynomial> edgePoly;
    if (bound + 1 <= kMaxPoints) {
        const long long points = bound + 1;
        std::vector<PointEval> evals(points);
        parallelFor(points, [&](long long k) {
            evals[k] = evaluatePoint(b, Int(static_cast<long>(k + 1)), perEdgeNeeded, comp, o, plan.w, index);
        });
        // The squared matching polynomial has nonnegative coefficients, so
        // it is positive at every positive point unless it is zero.
        bool anyZero = false;
        bool allZero = true;
        for (const auto& ev : evals) {
            anyZero = anyZero || ev.det == 0;
            allZero = allZero && ev.det == 0;
        }
        if (anyZero) {
            require(allZero, Errc::InternalError,
                    "determinant vanishes at only some positive points");
            return res;
        }
        std::vector<Int> detValues(points);
        for (long long k = 0; k < points; ++k) {
            detValues[k] = evals[k].det;
        }
        detPoly = interpolate(detValues);
        if (perEdgeNeeded) {
            for (const auto& [id, rec] : comp.edges()) {
                (void)rec;
                std::vector<Int> edgeValues(points);
                for (long long k = 0; k < points; ++k) {
                    edgeValues[k] = evals[k].edgeDet.at(id);
                }
                edgePoly[id] = interpolate(edgeValues);
            }
        }
    } else {
        // Single evaluation at a power of two large enough that every
        // coefficient fits in one digit. The number of expansion terms is at
        // most the product of the vertex degrees.
        long long bits = 2;
        for (VertexId v : vertices) {
            long long deg = std::max(comp.degree(v), 2);
            long long width = 0;
            while ((1LL << width) < deg) {
                ++width;
            }
            bits += width;
        }
        const Int base = intPow(Int{2}, bits);
        const PointEval ev =
            evaluatePoint(b, base, perEdgeNeeded, comp, o, plan.w, index);
        if (ev.det == 0) {
            return res;
        }
        detPoly = digitsToPoly(ev.det, base);
        if (perEdgeNeeded) {
            for (const auto& [id, value] : ev.edgeDet) {
                edgePoly[id] = digitsToPoly(value, base);
            }
        }
    }

    if (detPoly.isZero()) {
        return res;
    }
    const long long dDet = detPoly.lowestDegree();
    require(dDet % 2 == 0, Errc::InternalError, "determinant valuation is odd");
    const Int m = sqrtExact(detPoly.at(dDet));
    res.hasPM = true;
    res.m = m;
    res.d = (dDet / 2) * plan.gcd + plan.shift * (n / 2);
    if (perEdgeNeeded) {
        for (const auto& [id, rec] : comp.edges()) {
            (void)rec;
            const Int away = sqrtExact(edgePoly[id].at(dDet));
            require(away <= m, Errc::InternalError, "per-edge count exceeds the total");
            res.perEdge[id] = m - away;
        }
        // Every vertex is covered exactly once by each matching.
        for (VertexId v : vertices) {
            Int sum{0};
            for (EdgeId e : comp.incidentEdges(v)) {
                sum += res.perEdge.at(e);
            }
            require(sum == m, Errc::InternalError, "per-edge counts break the degree identity");
        }
    }
    return res;
}

MatchingCounts countImpl(const PlanarGraph& g, const std::map<EdgeId, long long>& w,
                         bool perEdgeNeeded) {
    MatchingCounts out;
    std::vector<ComponentCounts> parts;
    for (const auto& compSet : connectedComponents(g)) {
        parts.push_back(countComponent(g.inducedOn(compSet), w, perEdgeNeeded));
    }
    bool all = true;
    for (const auto& part : parts) {
        all = all && part.hasPM;
    }
    if (!all) {
        out.d = -1;
        out.m = 0;
        if (perEdgeNeeded) {
            for (EdgeId e : g.edgeIds()) {
                out.perEdge[e] = 0;
            }
        }
        return out;
    }
    out.d = 0;
    out.m = 1;
    for (const auto& part : parts) {
        out.d += part.d;
        out.m *= part.m;
    }
    if (perEdgeNeeded) {
        for (const auto& part : parts) {
            const Int others = divExact(out.m, part.m);
            for (const auto& [id, count] : part.perEdge) {
                out.perEdge[id] = count * others;
            }
        }
    }
    return out;
}

}

MatchingCounts countMinWeight(const PlanarGraph& g, const std::map<EdgeId, long long>& w) {
    return countImpl(g, w, false);
}

MatchingCounts countAllEdges(const PlanarGraph& g, const std::map<EdgeId, long long>& w) {
    return countImpl(g, w, true);
}

Int countPerEdge(const PlanarGraph& g, const std::map<EdgeId, long long>& w, EdgeId e) {
    require(g.hasEdge(e), Errc::PreconditionViolated, "edge is not in the graph");
    return countImpl(g, w, true).perEdge.at(e);
}

FractionalPoint avgPoint(const PlanarGraph& g, const std::map<EdgeId, long long>& w) {
    const MatchingCounts counts = countImpl(g, w, true);
    require(counts.m > 0, Errc::NoPerfectMatching, "graph has no perfect matching");
    FractionalPoint x;
    for (const auto& [id, count] : counts.perEdge) {
        x[id] = makeRat(count, counts.m);
    }
    return x;
}

bool hasPerfectMatching(const PlanarGraph& g) {
    return countMinWeight(g, {}).m > 0;
}

}

#include "planarmatch/pfaffian.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "planarmatch/error.hpp"
#include "planarmatch/oracle.hpp"
#include "planarmatch/parallel.hpp"

using namespace planarmatch;

namespace {

bool failsWith(Errc code, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

IntPolynomial poly(std::initializer_list<std::pair<long long, long long>> terms) {
    IntPolynomial p;
    for (const auto& [degree, value] : terms) {
        p.add(degree, Int(static_cast<long>(value)));
    }
    return p;
}

// Deterministic weight vectors for the oracle cross-checks.
std::map<EdgeId, long long> testWeights(const PlanarGraph& g, int salt) {
    std::map<EdgeId, long long> w;
    for (EdgeId e : g.edgeIds()) {
        w[e] = (e * 7 + salt * 13) % (salt + 4);
    }
    return w;
}

void agreesWithOracle(const PlanarGraph& g, const std::map<EdgeId, long long>& w) {
    const auto expected = oracle::enumeratePerfectMatchings(g, w);
    const auto got = countAllEdges(g, w);
    CHECK(got.m == Int(static_cast<long>(expected.minWeightCount)));
    if (expected.minWeightCount > 0) {
        CHECK(got.d == expected.optimalWeight);
        for (const auto& [e, count] : expected.perEdgeMinWeight) {
            CHECK(got.perEdge.at(e) == Int(static_cast<long>(count)));
        }
    }
}

}

TEST_CASE("fkt orientation satisfies the face parity condition") {
    for (const PlanarGraph& g :
         {fixtures::cycle(4), fixtures::cycle(5), fixtures::k4(), fixtures::prism(),
          fixtures::grid(3, 3), fixtures::grid(3, 4), fixtures::bridgedTriangles(),
          fixtures::singleEdge(), fixtures::bigon(0, 2)}) {
        const auto o = fktOrient(g);
        CHECK(o.direction.size() == static_cast<size_t>(g.edgeCount()));
        for (const auto& [e, dir] : o.direction) {
            CHECK(g.edge(e).touches(dir.first));
            CHECK(g.edge(e).touches(dir.second));
            CHECK(dir.first != dir.second);
        }
        CHECK(checkFkt(g, o));
    }
}

TEST_CASE("flipping any single edge of k4 breaks the parity condition") {
    const auto g = fixtures::k4();
    const auto o = fktOrient(g);
    for (EdgeId e : g.edgeIds()) {
        PfaffianOrientation broken = o;
        auto& dir = broken.direction[e];
        dir = {dir.second, dir.first};
        CHECK_FALSE(checkFkt(g, broken));
    }
}

TEST_CASE("orientation requires a connected graph") {
    const auto g = fixtures::twoEdges();
    CHECK(failsWith(Errc::Disconnected, [&] { fktOrient(g); }));
    CHECK(failsWith(Errc::Disconnected, [&] { checkFkt(g, PfaffianOrientation{}); }));
}

TEST_CASE("signed adjacency matrix of a single edge") {
    const auto g = fixtures::singleEdge();
    const auto b = buildTutteMatrix(g, fktOrient(g), {});
    REQUIRE(b.size() == 2);
    CHECK(b[0][0].isZero());
    CHECK(b[1][1].isZero());
    CHECK(b[0][1] == poly({{0, 1}}));
    CHECK(b[1][0] == poly({{0, -1}}));
}

TEST_CASE("parallel edges share one entry and one sign") {
    const auto g = fixtures::bigon(0, 2);
    const auto b = buildTutteMatrix(g, fktOrient(g), {{1, 0}, {2, 2}});
    CHECK(b[0][1] == poly({{0, 1}, {2, 1}}));
    CHECK(b[1][0] == poly({{0, -1}, {2, -1}}));
}

TEST_CASE("matrix weights must be nonnegative") {
    const auto g = fixtures::singleEdge();
    const auto o = fktOrient(g);
    CHECK(failsWith(Errc::NegativeWeight,
                    [&] { buildTutteMatrix(g, o, {{1, -1}}); }));
}

TEST_CASE("polynomial determinant basics") {
    CHECK(polyDeterminant({}) == poly({{0, 1}}));
    CHECK(polyDeterminant({{poly({})}}).isZero());
    CHECK(polyDeterminant({{poly({{0, 5}})}}) == poly({{0, 5}}));

    // Skew 2x2 with entry 1 + y.
    const IntPolynomial e = poly({{0, 1}, {1, 1}});
    const IntPolynomial ne = poly({{0, -1}, {1, -1}});
    const IntPolynomial zero;
    CHECK(polyDeterminant({{zero, e}, {ne, zero}}) == poly({{0, 1}, {1, 2}, {2, 1}}));

    // Not skew: [[1, y], [y, 1]] has determinant 1 - y^2.
    const IntPolynomial one = poly({{0, 1}});
    const IntPolynomial y = poly({{1, 1}});
    CHECK(polyDeterminant({{one, y}, {y, one}}) == poly({{0, 1}, {2, -1}}));

    // Odd-dimensional skew matrices are singular.
    const IntPolynomial a = poly({{0, 3}});
    const IntPolynomial na = poly({{0, -3}});
    CHECK(polyDeterminant({{zero, e, a}, {ne, zero, y}, {na, poly({{1, -1}}), zero}})
              .isZero());
}

TEST_CASE("determinant of the k4 matrix is the squared matching count") {
    const auto g = fixtures::k4();
    const auto det = polyDeterminant(buildTutteMatrix(g, fktOrient(g), {}));
    CHECK(det == poly({{0, 9}}));
}

TEST_CASE("counts on the unweighted fixtures") {
    struct Row {
        PlanarGraph g;
        long long m;
    };
    const std::vector<Row> rows{
        {fixtures::cycle(4), 2},  {fixtures::cycle(6), 2},
        {fixtures::k4(), 3},      {fixtures::prism(), 4},
        {fixtures::grid(2, 2), 2}, {fixtures::grid(4, 4), 36},
        {fixtures::bridgedTriangles(), 1},
    };
    for (const auto& row : rows) {
        const auto counts = countMinWeight(row.g, {});
        CHECK(counts.d == 0);
        CHECK(counts.m == Int(static_cast<long>(row.m)));
    }
    const auto none = countMinWeight(fixtures::cycle(5), {});
    CHECK(none.m == 0);
    CHECK(none.d == -1);
}

TEST_CASE("one weighted edge splits the square's matchings") {
    const auto g = fixtures::cycle(4);
    const auto counts = countAllEdges(g, {{1, 1}});
    CHECK(counts.d == 0);
    CHECK(counts.m == 1);
    CHECK(counts.perEdge == std::map<EdgeId, Int>{{1, 0}, {2, 1}, {3, 0}, {4, 1}});
}

TEST_CASE("parallel edges are counted separately") {
    const auto counts = countAllEdges(fixtures::bigon(0, 2), {{1, 0}, {2, 2}});
    CHECK(counts.d == 0);
    CHECK(counts.m == 1);
    CHECK(counts.perEdge == std::map<EdgeId, Int>{{1, 1}, {2, 0}});
}

TEST_CASE("disconnected graphs multiply their component counts") {
    const auto two = countAllEdges(fixtures::twoEdges(), {});
    CHECK(two.m == 1);
    CHECK(two.d == 0);
    CHECK(two.perEdge == std::map<EdgeId, Int>{{1, 1}, {2, 1}});

    const auto mixed = countAllEdges(fixtures::c4PlusEdge(), {{2, 3}});
    CHECK(mixed.m == 1);
    CHECK(mixed.d == 0);
    CHECK(mixed.perEdge.at(5) == 1);
    CHECK(mixed.perEdge.at(1) == 1);
    CHECK(mixed.perEdge.at(2) == 0);

    // Odd components rule out a perfect matching entirely.
    const auto split = fixtures::bridgedTriangles().withoutEdges({7});
    CHECK(countMinWeight(split, {}).m == 0);
}

TEST_CASE("average point of the frozen fixtures") {
    const auto square = avgPoint(fixtures::cycle(4), {});
    for (EdgeId e : {1, 2, 3, 4}) {
        CHECK(square.at(e) == Rat(1, 2));
    }

    const auto k4 = avgPoint(fixtures::k4(), {});
    for (EdgeId e : {1, 2, 3, 4, 5, 6}) {
        CHECK(k4.at(e) == Rat(1, 3));
    }

    const auto prism = avgPoint(fixtures::prism(), {});
    for (EdgeId triangle : {1, 2, 3, 4, 5, 6}) {
        CHECK(prism.at(triangle) == Rat(1, 4));
    }
    for (EdgeId rung : {7, 8, 9}) {
        CHECK(prism.at(rung) == Rat(1, 2));
    }
}

TEST_CASE("average point requires a perfect matching") {
    CHECK(failsWith(Errc::NoPerfectMatching, [] { avgPoint(fixtures::cycle(5), {}); }));
    const auto split = fixtures::bridgedTriangles().withoutEdges({7});
    CHECK(failsWith(Errc::NoPerfectMatching, [&] { avgPoint(split, {}); }));
}

TEST_CASE("wide weight ranges take the single-evaluation route") {
    // gcd and shift normalization cannot compress these, so the degree bound
    // exceeds the interpolation limit.
    const auto counts = countAllEdges(fixtures::cycle(4), {{1, 300}, {2, 1}});
    CHECK(counts.d == 1);
    CHECK(counts.m == 1);
    CHECK(counts.perEdge == std::map<EdgeId, Int>{{1, 0}, {2, 1}, {3, 0}, {4, 1}});

    std::map<EdgeId, long long> spread;
    for (EdgeId e : fixtures::prism().edgeIds()) {
        spread[e] = (e * 97) % 251 + (e == 5 ? 300 : 0);
    }
    agreesWithOracle(fixtures::prism(), spread);
}

TEST_CASE("counts agree with enumeration across weight vectors") {
    const std::vector<PlanarGraph> graphs{
        fixtures::cycle(4),  fixtures::cycle(6),        fixtures::k4(),
        fixtures::prism(),   fixtures::bridgedTriangles(), fixtures::c4PlusEdge(),
        fixtures::grid(2, 3), fixtures::grid(3, 4),      fixtures::bigon(0, 2),
    };
    for (const auto& g : graphs) {
        agreesWithOracle(g, {});
        for (int salt = 1; salt <= 5; ++salt) {
            agreesWithOracle(g, testWeights(g, salt));
        }
    }
}

TEST_CASE("per edge counts answer single queries") {
    const auto g = fixtures::prism();
    const auto all = countAllEdges(g, {{7, 1}});
    for (EdgeId e : g.edgeIds()) {
        CHECK(countPerEdge(g, {{7, 1}}, e) == all.perEdge.at(e));
    }
    CHECK(failsWith(Errc::PreconditionViolated, [&] { countPerEdge(g, {}, 42); }));
}

TEST_CASE("perfect matching existence") {
    CHECK(hasPerfectMatching(fixtures::grid(3, 4)));
    CHECK(hasPerfectMatching(fixtures::grid(8, 8)));
    CHECK(hasPerfectMatching(fixtures::twoEdges()));
    CHECK_FALSE(hasPerfectMatching(fixtures::grid(1, 3)));
    CHECK_FALSE(hasPerfectMatching(fixtures::cycle(5)));
    CHECK_FALSE(hasPerfectMatching(fixtures::bridgedTriangles().withoutEdges({7})));
}

TEST_CASE("worker count does not change the results") {
    const auto g = fixtures::grid(3, 4);
    std::map<EdgeId, long long> w;
    for (EdgeId e : g.edgeIds()) {
        w[e] = (e * 5) % 7;
    }
    setWorkerCount(1);
    const auto serial = avgPoint(g, w);
    setWorkerCount(4);
    const auto parallel = avgPoint(g, w);
    setWorkerCount(1);
    CHECK(serial == parallel);
}

TEST_CASE("polynomial evaluation") {
    const auto p = poly({{0, 3}, {2, -1}, {5, 2}});
    CHECK(p.evaluate(Int{1}) == 4);
    CHECK(p.evaluate(Int{2}) == 3 - 4 + 64);
    CHECK(p.evaluate(Int{0}) == 3);
    CHECK(IntPolynomial{}.evaluate(Int{7}) == 0);
    CHECK(p.at(2) == -1);
    CHECK(p.at(3) == 0);
    CHECK(p.lowestDegree() == 0);
    CHECK(p.highestDegree() == 5);
}

#include <doctest.h>

#include <mmpfloer/linalg.hpp>
#include <mmpfloer/polytope.hpp>

#include <algorithm>
#include <set>

using namespace mmpfloer;
using namespace mmpfloer::polytope;

namespace {

Polytope unit_square() {
    return from_facets(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                       {rat(0), rat(0), rat(-1), rat(-1)});
}

Polytope chopped_square() {
    return from_facets(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, -1}},
                       {rat(0), rat(0), rat(-1), rat(-1), rat(-7, 4)});
}

Polytope standard_simplex(size_t d) {
    std::vector<ZVector> normals;
    for (size_t i = 0; i < d; ++i) {
        ZVector e(d, 0);
        e[i] = 1;
        normals.push_back(e);
    }
    normals.push_back(ZVector(d, -1));
    QVector consts(d, rat(0));
    consts.push_back(rat(-1));
    return from_facets(d, std::move(normals), std::move(consts));
}

std::set<QVector> vertex_set(const Polytope& P) {
    std::set<QVector> out;
    for (const auto& v : vertices(P)) out.insert(v.point);
    return out;
}

}  // namespace

TEST_CASE("construction validates the input system") {
    // normals are rescaled to primitive vectors
    Polytope P = from_facets(2, {{2, 0}, {0, 3}, {-4, 0}, {0, -5}},
                             {rat(0), rat(0), rat(-2), rat(-5, 2)});
    CHECK(P.normals[0] == ZVector{1, 0});
    CHECK(P.normals[1] == ZVector{0, 1});
    CHECK(P.constants[0] == rat(0));
    CHECK(P.constants[2] == rat(-1, 2));  // -2 rescaled by the gcd 4
    CHECK(P.constants[3] == rat(-1, 2));

    CHECK_THROWS_AS(from_facets(2, {{1, 0}, {0, 1}}, {rat(0), rat(0)}),
                    std::invalid_argument);  // unbounded quadrant
    CHECK_THROWS_AS(from_facets(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                {rat(1), rat(0), rat(0), rat(-1)}),
                    std::invalid_argument);  // x >= 1 and x <= 0
    CHECK_THROWS_AS(from_facets(2, {{0, 0}, {1, 0}}, {rat(0), rat(0)}),
                    std::invalid_argument);  // zero normal
    CHECK_THROWS_AS(from_facets(2, {{1, 0}}, {rat(0), rat(0)}),
                    std::invalid_argument);  // length mismatch
}

TEST_CASE("vertex enumeration on squares and simplices") {
    auto sq = vertex_set(unit_square());
    std::set<QVector> expect{{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}};
    CHECK(sq == expect);

    auto tri = vertices(standard_simplex(3));
    CHECK(tri.size() == 4);
    for (const auto& v : tri) CHECK(v.active.size() == 3);

    auto chop = vertices(chopped_square());
    CHECK(chop.size() == 5);
    CHECK(vertex_set(chopped_square()).count({rat(1), rat(3, 4)}) == 1);
    CHECK(vertex_set(chopped_square()).count({rat(3, 4), rat(1)}) == 1);
    CHECK(vertex_set(chopped_square()).count({rat(1), rat(1)}) == 0);
}

TEST_CASE("Delzant smoothness certificates") {
    CHECK(is_smooth(unit_square()).smooth);
    CHECK(is_smooth(standard_simplex(2)).smooth);
    CHECK(is_smooth(standard_simplex(3)).smooth);
    CHECK(is_smooth(chopped_square()).smooth);

    // triangle with a vertex of determinant 2
    Polytope sing = from_facets(2, {{1, 0}, {0, 1}, {-1, -2}}, {rat(0), rat(0), rat(-2)});
    auto report = is_smooth(sing);
    CHECK_FALSE(report.smooth);
    bool found_bad = false;
    for (const auto& cert : report.certificates) {
        if (cert.smooth) continue;
        found_bad = true;
        CHECK(abs(cert.normal_det) == 2);
    }
    CHECK(found_bad);
}

TEST_CASE("facet gaps and interiority") {
    Polytope P = unit_square();
    QVector center{rat(1, 2), rat(1, 2)};
    CHECK(facet_gaps(P, center) == QVector{rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)});
    CHECK(is_interior(P, center));
    CHECK_FALSE(is_interior(P, {rat(0), rat(1, 2)}));
    CHECK(facet_gaps(P, {rat(2), rat(0)})[2] == rat(-1));
}

TEST_CASE("shrinking the square") {
    Polytope P = unit_square();
    auto full = shrink(P, rat(1, 4));
    REQUIRE(full.kind == ShrinkKind::Full);
    CHECK(vertex_set(full.poly).count({rat(1, 4), rat(1, 4)}) == 1);
    CHECK(vertices(full.poly).size() == 4);

    auto point = shrink(P, rat(1, 2));
    CHECK(point.kind == ShrinkKind::LowerDimensional);
    CHECK(vertices(point.poly).size() == 1);

    CHECK(shrink(P, rat(3, 4)).kind == ShrinkKind::Empty);
}

TEST_CASE("shrinking a rectangle collapses to a segment") {
    Polytope R = from_facets(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                             {rat(0), rat(0), rat(-3), rat(-1)});
    auto seg = shrink(R, rat(1, 2));
    CHECK(seg.kind == ShrinkKind::LowerDimensional);
    auto vs = vertex_set(seg.poly);
    CHECK(vs == std::set<QVector>{{rat(1, 2), rat(1, 2)}, {rat(5, 2), rat(1, 2)}});
}

TEST_CASE("degenerate locus of the square") {
    auto degs = degenerate_locus(unit_square());
    REQUIRE(!degs.empty());
    for (const auto& d : degs) {
        CHECK(d.t == rat(1, 2));
        CHECK(d.point == QVector{rat(1, 2), rat(1, 2)});
    }
}

TEST_CASE("degenerate locus of the chopped square") {
    auto degs = degenerate_locus(chopped_square());
    std::set<Rational> times;
    for (const auto& d : degs) times.insert(d.t);
    CHECK(times == std::set<Rational>{rat(1, 4), rat(1, 2)});
    for (const auto& d : degs) {
        if (d.t != rat(1, 4)) continue;
        CHECK(d.point == QVector{rat(3, 4), rat(3, 4)});
        CHECK(d.active == std::vector<size_t>{2, 3, 4});
    }
}

TEST_CASE("degeneracies satisfy their defining conditions") {
    for (const Polytope& P : {unit_square(), chopped_square(), standard_simplex(2),
                              from_facets(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, -1}, {1, 1}},
                                          {rat(0), rat(0), rat(-2), rat(-2), rat(-3), rat(1, 2)})}) {
        auto degs = degenerate_locus(P);
        REQUIRE(!degs.empty());
        for (const auto& d : degs) {
            CHECK(d.t > 0);
            // t is the minimum gap and active is exactly the argmin set
            QVector gaps = facet_gaps(P, d.point);
            Rational mn = gaps[0];
            for (const auto& g : gaps) mn = std::min(mn, g);
            CHECK(mn == d.t);
            std::vector<size_t> argmin;
            for (size_t j = 0; j < gaps.size(); ++j)
                if (gaps[j] == mn) argmin.push_back(j);
            CHECK(argmin == d.active);
            // the active normals are linearly dependent
            linalg::QMatrix rows;
            for (size_t j : d.active) rows.push_back(linalg::int_to_rational(P.normals[j]));
            CHECK(linalg::rank(rows) < rows.size());
        }
        // times are sorted
        for (size_t i = 1; i < degs.size(); ++i) CHECK(degs[i - 1].t <= degs[i].t);
    }
}

TEST_CASE("combinatorial type only changes at degeneracy times") {
    for (const Polytope& P : {unit_square(), chopped_square()}) {
        std::set<Rational> times;
        for (const auto& d : degenerate_locus(P)) times.insert(d.t);
        std::vector<Rational> cuts(times.begin(), times.end());
        Rational lo(0);
        for (const Rational& hi : cuts) {
            // sample three interior points of (lo, hi): vertex count constant
            std::vector<size_t> counts;
            for (int k = 1; k <= 3; ++k) {
                Rational t = lo + (hi - lo) * Rational(k, 4);
                auto s = shrink(P, t);
                REQUIRE(s.kind == ShrinkKind::Full);
                counts.push_back(vertices(s.poly).size());
            }
            CHECK(counts[0] == counts[1]);
            CHECK(counts[1] == counts[2]);
            lo = hi;
        }
    }
}

TEST_CASE("points print in the report format") {
    CHECK(point_to_string({rat(1, 2), rat(-3)}) == "(1/2,-3)");
}

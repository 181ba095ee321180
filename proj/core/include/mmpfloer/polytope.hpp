#ifndef MMPFLOER_POLYTOPE_HPP
#define MMPFLOER_POLYTOPE_HPP

#include <mmpfloer/rational.hpp>

#include <cstddef>
#include <string>
#include <vector>

// Exact rational convex polytopes in H-representation
//   P = { mu : <mu, nu_j> >= c_j }
// with primitive integer inward normals.  Everything is exhaustive
// enumeration over facet subsets; intended for dim <= 4 and few facets.

namespace mmpfloer::polytope {

struct Polytope {
    size_t dim = 0;
    std::vector<ZVector> normals;
    QVector constants;
};

struct VertexData {
    QVector point;
    std::vector<size_t> active;  // facet indices tight at the point
};

struct VertexCertificate {
    QVector point;
    size_t active_count = 0;
    Rational normal_det;  // det of the active normals when square, else 0
    bool smooth = false;
};

struct SmoothnessReport {
    bool smooth = false;
    std::vector<VertexCertificate> certificates;
};

enum class ShrinkKind { Full, LowerDimensional, Empty };

struct ShrinkResult {
    ShrinkKind kind = ShrinkKind::Empty;
    Polytope poly;  // the shrunken constraint system (meaningful unless Empty)
};

struct Degeneracy {
    Rational t;
    QVector point;
    std::vector<size_t> active;  // all facets at gap exactly t from the point
};

/// Validated construction: normals made primitive, boundedness and
/// nonemptiness checked by exact enumeration.  Throws std::invalid_argument.
Polytope from_facets(size_t dim, std::vector<ZVector> normals, QVector constants);

/// All vertices with full active sets, lexicographically sorted.
std::vector<VertexData> vertices(const Polytope& P);

/// Delzant smoothness: every vertex simple with active-normal determinant +-1.
SmoothnessReport is_smooth(const Polytope& P);

/// (<mu,nu_j> - c_j)_j; mu is interior iff all entries are positive.
QVector facet_gaps(const Polytope& P, const QVector& mu);

bool is_interior(const Polytope& P, const QVector& mu);

/// Anticanonical shrinking: same normals, constants c_j + t.
ShrinkResult shrink(const Polytope& P, const Rational& t);

/// All (t, mu) with t > 0 such that the facets at gap exactly t from mu are
/// linearly dependent and t is the minimum gap at mu.  Found by enumerating
/// circuits among the normals; sorted by (t, mu).
std::vector<Degeneracy> degenerate_locus(const Polytope& P);

std::string point_to_string(const QVector& mu);

}  // namespace mmpfloer::polytope

#endif

#include <mmpfloer/polytope.hpp>

#include <mmpfloer/linalg.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace mmpfloer::polytope {

namespace {

using linalg::QMatrix;

long gcd_abs(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

bool lex_less(const QVector& a, const QVector& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// all k-subsets of {0..n-1}
void for_each_subset(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& f) {
    std::vector<size_t> idx(k);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (size_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

QMatrix normal_rows(const Polytope& P, const std::vector<size_t>& subset) {
    QMatrix A;
    for (size_t j : subset) A.push_back(linalg::int_to_rational(P.normals[j]));
    return A;
}

// Vertices of the system <mu,nu_j> >= c_j without any validity assumptions.
std::vector<VertexData> enumerate_vertices(const Polytope& P) {
    std::vector<VertexData> out;
    std::vector<QVector> seen;
    for_each_subset(P.normals.size(), P.dim, [&](const std::vector<size_t>& subset) {
        QMatrix A = normal_rows(P, subset);
        QVector b;
        for (size_t j : subset) b.push_back(P.constants[j]);
        if (linalg::rank(A) != P.dim) return;
        auto sol = linalg::solve_rational(A, b);
        if (!sol.consistent) return;
        const QVector& v = sol.particular;
        for (size_t j = 0; j < P.normals.size(); ++j) {
            if (linalg::dot(linalg::int_to_rational(P.normals[j]), v) < P.constants[j]) return;
        }
        for (const auto& w : seen)
            if (w == v) return;
        seen.push_back(v);
        VertexData vd;
        vd.point = v;
        for (size_t j = 0; j < P.normals.size(); ++j)
            if (linalg::dot(linalg::int_to_rational(P.normals[j]), v) == P.constants[j])
                vd.active.push_back(j);
        out.push_back(std::move(vd));
    });
    std::sort(out.begin(), out.end(),
              [](const VertexData& a, const VertexData& b) { return lex_less(a.point, b.point); });
    return out;
}

// Does the recession cone { d : <d,nu_j> >= 0 for all j } contain a nonzero
// direction?  Checked via kernel directions and extreme-ray candidates cut
// out by (dim-1)-subsets of the normals.
bool has_recession_ray(const Polytope& P) {
    QMatrix all = normal_rows(P, [&] {
        std::vector<size_t> idx(P.normals.size());
        std::iota(idx.begin(), idx.end(), 0);
        return idx;
    }());
    auto in_cone = [&](const QVector& d) {
        bool nonzero = false;
        for (const auto& x : d) nonzero = nonzero || x != 0;
        if (!nonzero) return false;
        for (size_t j = 0; j < P.normals.size(); ++j)
            if (linalg::dot(linalg::int_to_rational(P.normals[j]), d) < 0) return false;
        return true;
    };
    if (linalg::rank(all) < P.dim) {
        // the cone contains the whole kernel line(s)
        return true;
    }
    if (P.dim == 1) {
        QVector d{Rational(1)};
        if (in_cone(d)) return true;
        d[0] = -1;
        return in_cone(d);
    }
    bool found = false;
    for_each_subset(P.normals.size(), P.dim - 1, [&](const std::vector<size_t>& subset) {
        if (found) return;
        QMatrix A = normal_rows(P, subset);
        QVector zero(subset.size(), Rational(0));
        auto sol = linalg::solve_rational(A, zero);
        for (const auto& d : sol.nullspace) {
            if (in_cone(d)) {
                found = true;
                return;
            }
            QVector nd = d;
            for (auto& x : nd) x = -x;
            if (in_cone(nd)) {
                found = true;
                return;
            }
        }
    });
    return found;
}

}  // namespace

Polytope from_facets(size_t dim, std::vector<ZVector> normals, QVector constants) {
    if (dim == 0 || dim > 4)
        throw std::invalid_argument("from_facets: dimension must lie in 1..4");
    if (normals.size() != constants.size())
        throw std::invalid_argument("from_facets: normals/constants length mismatch");
    if (normals.size() < dim + 1)
        throw std::invalid_argument("from_facets: too few facets to bound a polytope");
    for (size_t j = 0; j < normals.size(); ++j) {
        if (normals[j].size() != dim)
            throw std::invalid_argument("from_facets: normal of wrong dimension");
        long g = 0;
        for (long x : normals[j]) g = gcd_abs(g, x);
        if (g == 0) throw std::invalid_argument("from_facets: zero normal vector");
        if (g != 1) {
            for (long& x : normals[j]) x /= g;
            constants[j] /= g;
        }
    }
    for (size_t a = 0; a < normals.size(); ++a)
        for (size_t b = a + 1; b < normals.size(); ++b)
            if (normals[a] == normals[b] && constants[a] == constants[b])
                throw std::invalid_argument("from_facets: duplicate facet inequality");

    Polytope P{dim, std::move(normals), std::move(constants)};
    if (has_recession_ray(P))
        throw std::invalid_argument("from_facets: unbounded solution set");
    if (enumerate_vertices(P).empty())
        throw std::invalid_argument("from_facets: empty solution set");
    return P;
}

std::vector<VertexData> vertices(const Polytope& P) { return enumerate_vertices(P); }

SmoothnessReport is_smooth(const Polytope& P) {
    SmoothnessReport report;
    report.smooth = true;
    for (const auto& v : enumerate_vertices(P)) {
        VertexCertificate cert;
        cert.point = v.point;
        cert.active_count = v.active.size();
        if (v.active.size() == P.dim) {
            cert.normal_det = linalg::det(normal_rows(P, v.active));
            cert.smooth = cert.normal_det == 1 || cert.normal_det == -1;
        } else {
            cert.smooth = false;
        }
        report.smooth = report.smooth && cert.smooth;
        report.certificates.push_back(std::move(cert));
    }
    return report;
}

QVector facet_gaps(const Polytope& P, const QVector& mu) {
    if (mu.size() != P.dim) throw std::invalid_argument("facet_gaps: point of wrong dimension");
    QVector gaps;
    gaps.reserve(P.normals.size());
    for (size_t j = 0; j < P.normals.size(); ++j)
        gaps.push_back(linalg::dot(linalg::int_to_rational(P.normals[j]), mu) - P.constants[j]);
    return gaps;
}

bool is_interior(const Polytope& P, const QVector& mu) {
    for (const auto& g : facet_gaps(P, mu))
        if (g <= 0) return false;
    return true;
}

ShrinkResult shrink(const Polytope& P, const Rational& t) {
    if (t < 0) throw std::invalid_argument("shrink: t must be nonnegative");
    ShrinkResult res;
    res.poly = P;
    for (auto& c : res.poly.constants) c += t;
    auto verts = enumerate_vertices(res.poly);
    if (verts.empty()) {
        res.kind = ShrinkKind::Empty;
        return res;
    }
    QVector bary(P.dim, Rational(0));
    for (const auto& v : verts)
        for (size_t i = 0; i < P.dim; ++i) bary[i] += v.point[i];
    for (auto& x : bary) x /= Rational(long(verts.size()));
    res.kind = ShrinkKind::Full;
    for (const auto& g : facet_gaps(res.poly, bary)) {
        if (g == 0) {
            res.kind = ShrinkKind::LowerDimensional;
            break;
        }
    }
    return res;
}

std::vector<Degeneracy> degenerate_locus(const Polytope& P) {
    std::vector<Degeneracy> out;
    const size_t k = P.normals.size();
    for (size_t sz = 2; sz <= P.dim + 1 && sz <= k; ++sz) {
        for_each_subset(k, sz, [&](const std::vector<size_t>& subset) {
            // circuit test: one-dimensional dependency with full support
            QMatrix At(P.dim, QVector(sz, Rational(0)));
            for (size_t col = 0; col < sz; ++col)
                for (size_t i = 0; i < P.dim; ++i) At[i][col] = Rational(P.normals[subset[col]][i]);
            QVector zero(P.dim, Rational(0));
            auto ker = linalg::solve_rational(At, zero);
            if (ker.nullspace.size() != 1) return;
            const QVector& a = ker.nullspace.front();
            Rational asum(0);
            for (const auto& x : a) {
                if (x == 0) return;  // not minimal
                asum += x;
            }
            if (asum == 0) return;
            Rational acdot(0);
            for (size_t col = 0; col < sz; ++col) acdot += a[col] * P.constants[subset[col]];
            Rational t = -acdot / asum;
            if (t <= 0) return;
            // face of P_t where the circuit facets are tight
            ShrinkResult st = shrink(P, t);
            if (st.kind == ShrinkKind::Empty) return;
            auto verts = enumerate_vertices(st.poly);
            std::vector<QVector> face;
            for (const auto& v : verts) {
                bool all_tight = true;
                for (size_t j : subset)
                    all_tight = all_tight &&
                                std::find(v.active.begin(), v.active.end(), j) != v.active.end();
                if (all_tight) face.push_back(v.point);
            }
            if (face.empty()) return;
            QVector mu(P.dim, Rational(0));
            for (const auto& p : face)
                for (size_t i = 0; i < P.dim; ++i) mu[i] += p[i];
            for (auto& x : mu) x /= Rational(long(face.size()));
            Degeneracy d;
            d.t = t;
            d.point = mu;
            QVector gaps = facet_gaps(P, mu);
            for (size_t j = 0; j < gaps.size(); ++j)
                if (gaps[j] == t) d.active.push_back(j);
            out.push_back(std::move(d));
        });
    }
    std::sort(out.begin(), out.end(), [](const Degeneracy& x, const Degeneracy& y) {
        if (x.t != y.t) return x.t < y.t;
        return lex_less(x.point, y.point);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Degeneracy& x, const Degeneracy& y) {
                              return x.t == y.t && x.point == y.point;
                          }),
              out.end());
    return out;
}

std::string point_to_string(const QVector& mu) {
    std::string s = "(";
    for (size_t i = 0; i < mu.size(); ++i) {
        if (i) s += ",";
        s += rational_to_string(mu[i]);
    }
    return s + ")";
}

}  // namespace mmpfloer::polytope

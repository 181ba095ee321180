#include <mmpfloer/ainfty.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mmpfloer::ainfty {

namespace {

namespace nv = mmpfloer::novikov;
using Cplx = std::complex<double>;

long mod_deg(long d, long g) {
    if (g == 0) return d;
    long r = d % g;
    return r < 0 ? r + g : r;
}

long degree_of(const CurvedAInftyAlgebra& A, size_t i) { return A.basis[i].degree; }

bool odd_degree(const CurvedAInftyAlgebra& A, size_t i) {
    return ((degree_of(A, i) % 2) + 2) % 2 == 1;
}

void check_element(const CurvedAInftyAlgebra& A, const Element& e, const char* what) {
    if (e.size() != A.basis.size())
        throw std::invalid_argument(std::string(what) + ": element size mismatch");
    for (const auto& s : e) {
        if (s.trunc != A.energy_cutoff)
            throw std::invalid_argument(std::string(what) + ": element truncation mismatch");
        auto v = nv::valuation(s);
        if (v && *v < 0)
            throw std::invalid_argument(std::string(what) + ": negative valuation coefficient");
    }
}

}  // namespace

CurvedAInftyAlgebra make_algebra(long grading_modulus, std::vector<Generator> basis,
                                 std::optional<size_t> unit_index, size_t arity_cutoff,
                                 Rational energy_cutoff,
                                 std::map<std::vector<size_t>, Element> maps) {
    if (grading_modulus < 0 || grading_modulus % 2 != 0)
        throw std::invalid_argument("make_algebra: grading modulus must be even and nonnegative");
    if (basis.empty()) throw std::invalid_argument("make_algebra: empty basis");
    if (unit_index && *unit_index >= basis.size())
        throw std::invalid_argument("make_algebra: unit index out of range");
    CurvedAInftyAlgebra A;
    A.grading_modulus = grading_modulus;
    A.basis = std::move(basis);
    A.unit_index = unit_index;
    A.arity_cutoff = arity_cutoff;
    A.energy_cutoff = std::move(energy_cutoff);
    for (auto& [key, out] : maps) {
        if (key.size() > arity_cutoff)
            throw std::invalid_argument("make_algebra: map entry above the arity cutoff");
        for (size_t i : key)
            if (i >= A.basis.size())
                throw std::invalid_argument("make_algebra: input index out of range");
        check_element(A, out, "make_algebra");
        // deg(out) = sum deg(in) + 2 - n  (mod g)
        long expect = 2 - long(key.size());
        for (size_t i : key) expect += degree_of(A, i);
        for (size_t i = 0; i < out.size(); ++i) {
            if (out[i].is_zero()) continue;
            if (mod_deg(degree_of(A, i), A.grading_modulus) !=
                mod_deg(expect, A.grading_modulus))
                throw std::invalid_argument("make_algebra: degree bookkeeping violated on " +
                                            A.basis[i].name);
        }
        if (!el_is_zero(out)) A.maps[key] = out;
    }
    return A;
}

CurvedAInftyAlgebra from_dg(long grading_modulus, std::vector<Generator> basis,
                            std::optional<size_t> unit_index, Rational energy_cutoff,
                            const std::vector<std::tuple<size_t, size_t, size_t, Cplx>>& products,
                            const std::vector<std::tuple<size_t, size_t, nv::Series>>& differential) {
    std::map<std::vector<size_t>, Element> maps;
    size_t B = basis.size();
    auto out_at = [&](const std::vector<size_t>& key) -> Element& {
        auto it = maps.find(key);
        if (it == maps.end())
            it = maps.emplace(key, Element(B, nv::zero<Cplx>(energy_cutoff))).first;
        return it->second;
    };
    for (const auto& [i, j, k, c] : products) {
        double sign = (((basis.at(i).degree % 2) + 2) % 2 == 1) ? -1.0 : 1.0;
        Element& out = out_at({i, j});
        out[k] = nv::add(out[k], nv::monomial<Cplx>(Rational(0), c * sign, energy_cutoff));
    }
    for (const auto& [i, j, s] : differential) {
        Element& out = out_at({i});
        nv::Series st = s;
        st.trunc = energy_cutoff;
        nv::detail::normalize(st);
        out[j] = nv::add(out[j], st);
    }
    // cutoff 4 so the axiom sweep reaches length-3 tuples (associativity)
    return make_algebra(grading_modulus, std::move(basis), unit_index, 4,
                        std::move(energy_cutoff), std::move(maps));
}

CurvedAInftyAlgebra exterior_algebra(size_t n, const Rational& energy_cutoff) {
    if (n == 0 || n > 10) throw std::invalid_argument("exterior_algebra: bad generator count");
    size_t B = 1ul << n;
    std::vector<Generator> basis(B);
    for (size_t S = 0; S < B; ++S) {
        std::string name;
        long deg = 0;
        for (size_t i = 0; i < n; ++i) {
            if (S & (1ul << i)) {
                if (!name.empty()) name += "^";
                name += "x" + std::to_string(i + 1);
                ++deg;
            }
        }
        basis[S] = {name.empty() ? "1" : name, deg};
    }
    // x_S x_T with the shuffle sign, zero on overlap
    std::vector<std::tuple<size_t, size_t, size_t, Cplx>> products;
    for (size_t S = 0; S < B; ++S) {
        for (size_t T = 0; T < B; ++T) {
            if (S & T) continue;
            int sign = 1;
            for (size_t i = 0; i < n; ++i) {
                if (!(T & (1ul << i))) continue;
                for (size_t j = i + 1; j < n; ++j)
                    if (S & (1ul << j)) sign = -sign;
            }
            products.emplace_back(S, T, S | T, Cplx(double(sign)));
        }
    }
    return from_dg(0, std::move(basis), size_t(0), energy_cutoff, products, {});
}

CurvedAInftyAlgebra koszul_model(size_t n, const std::vector<nv::Series>& c,
                                 const nv::Series& curvature) {
    if (c.size() != n) throw std::invalid_argument("koszul_model: need one value per generator");
    const Rational E = curvature.trunc;
    CurvedAInftyAlgebra ext = exterior_algebra(n, E);
    std::vector<Generator> basis = ext.basis;  // Z-lifts kept; grading is mod 2
    std::vector<std::tuple<size_t, size_t, size_t, Cplx>> products;
    for (const auto& [key, val] : ext.maps) {
        if (key.size() != 2) continue;
        for (size_t k = 0; k < val.size(); ++k) {
            if (val[k].is_zero()) continue;
            // undo the from_dg sign to recover the raw structure constant
            double sign = (basis[key[0]].degree % 2 == 1) ? -1.0 : 1.0;
            products.emplace_back(key[0], key[1], k, val[k].terms.front().coef * sign);
        }
    }
    // derivation d(x_S) = sum_j (-1)^{j-1} c_{i_j} x_{S \ i_j}
    std::vector<std::tuple<size_t, size_t, nv::Series>> differential;
    for (size_t S = 1; S < (1ul << n); ++S) {
        int pos = 0;
        for (size_t i = 0; i < n; ++i) {
            if (!(S & (1ul << i))) continue;
            nv::Series ci = c[i];
            if (pos % 2 == 1) ci = nv::neg(ci);
            if (!ci.is_zero()) differential.emplace_back(S, S & ~(1ul << i), ci);
            ++pos;
        }
    }
    CurvedAInftyAlgebra A = from_dg(2, std::move(basis), size_t(0), E, products, differential);
    if (!curvature.is_zero()) {
        Element cur = el_zero(A);
        cur[0] = curvature;
        A.maps[{}] = cur;
    }
    return A;
}

// -- element helpers --------------------------------------------------------

Element el_zero(const CurvedAInftyAlgebra& A) {
    return Element(A.basis.size(), nv::zero<Cplx>(A.energy_cutoff));
}

Element el_basis(const CurvedAInftyAlgebra& A, size_t i) {
    Element e = el_zero(A);
    e.at(i) = nv::one<Cplx>(A.energy_cutoff);
    return e;
}

Element el_add(const Element& a, const Element& b) {
    Element out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] = nv::add(out[i], b[i]);
    return out;
}

Element el_sub(const Element& a, const Element& b) {
    Element out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] = nv::sub(out[i], b[i]);
    return out;
}

Element el_scale(const Element& a, const nv::Series& c) {
    Element out = a;
    for (auto& s : out) s = nv::mul(s, c);
    return out;
}

bool el_is_zero(const Element& a) {
    for (const auto& s : a)
        if (!s.is_zero()) return false;
    return true;
}

double el_norm(const Element& a) {
    double m = 0.0;
    for (const auto& s : a) m = std::max(m, nv::sup_norm(s));
    return m;
}

Element apply_mu(const CurvedAInftyAlgebra& A, const std::vector<Element>& args) {
    Element out = el_zero(A);
    for (const auto& [key, val] : A.maps) {
        if (key.size() != args.size()) continue;
        nv::Series c = nv::one<Cplx>(A.energy_cutoff);
        bool dead = false;
        for (size_t p = 0; p < key.size() && !dead; ++p) {
            c = nv::mul(c, args[p][key[p]]);
            dead = c.is_zero();
        }
        if (dead) continue;
        out = el_add(out, el_scale(val, c));
    }
    return out;
}

// -- axioms -----------------------------------------------------------------

AInftyReport verify_ainfty(const CurvedAInftyAlgebra& A) {
    AInftyReport report;
    const size_t B = A.basis.size();
    for (size_t d = 0; d + 1 <= A.arity_cutoff; ++d) {
        std::vector<size_t> tuple(d, 0);
        while (true) {
            Element total = el_zero(A);
            for (size_t m = 0; m <= d; ++m) {
                for (size_t n = 0; n + m <= d; ++n) {
                    std::vector<Element> inner_args;
                    for (size_t k = n; k < n + m; ++k) inner_args.push_back(el_basis(A, tuple[k]));
                    Element inner = apply_mu(A, inner_args);
                    std::vector<Element> outer;
                    for (size_t k = 0; k < n; ++k) outer.push_back(el_basis(A, tuple[k]));
                    outer.push_back(inner);
                    for (size_t k = n + m; k < d; ++k) outer.push_back(el_basis(A, tuple[k]));
                    long sign = long(n);
                    for (size_t k = 0; k < n; ++k) sign += degree_of(A, tuple[k]);
                    Element term = apply_mu(A, outer);
                    total = (((sign % 2) + 2) % 2 == 0) ? el_add(total, term)
                                                        : el_sub(total, term);
                }
            }
            double resid = el_norm(total);
            report.max_residual = std::max(report.max_residual, resid);
            if (resid > nv::zero_tolerance()) report.offenders.push_back({tuple, resid});

            size_t pos = d;
            while (pos > 0) {
                if (++tuple[pos - 1] < B) break;
                tuple[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return report;
}

bool verify_strict_unit(const CurvedAInftyAlgebra& A) {
    if (!A.unit_index) throw std::invalid_argument("verify_strict_unit: unit index unset");
    size_t u = *A.unit_index;
    for (size_t j = 0; j < A.basis.size(); ++j) {
        Element left = apply_mu(A, {el_basis(A, u), el_basis(A, j)});
        Element right = apply_mu(A, {el_basis(A, j), el_basis(A, u)});
        Element ej = el_basis(A, j);
        if (el_norm(el_sub(left, ej)) > nv::zero_tolerance()) return false;
        Element signed_ej = odd_degree(A, j) ? el_scale(ej, nv::monomial<Cplx>(Rational(0), Cplx(-1.0), A.energy_cutoff))
                                             : ej;
        if (el_norm(el_sub(right, signed_ej)) > nv::zero_tolerance()) return false;
    }
    for (const auto& [key, val] : A.maps) {
        if (key.size() == 2) continue;
        bool has_unit = std::find(key.begin(), key.end(), u) != key.end();
        if (has_unit && !el_is_zero(val)) return false;
    }
    return true;
}

// -- Maurer-Cartan ----------------------------------------------------------

bool in_a_plus(const CurvedAInftyAlgebra& A, const Element& b) {
    check_element(A, b, "in_a_plus");
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i].is_zero()) continue;
        if (degree_of(A, i) > 0 && *nv::valuation(b[i]) <= 0) return false;
    }
    return true;
}

bool in_a_plus_plus(const CurvedAInftyAlgebra& A, const Element& h) {
    check_element(A, h, "in_a_plus_plus");
    for (size_t i = 0; i < h.size(); ++i) {
        if (h[i].is_zero()) continue;
        if (degree_of(A, i) >= 0 && *nv::valuation(h[i]) <= 0) return false;
    }
    return true;
}

Element multi_insert(const CurvedAInftyAlgebra& A, const std::vector<Element>& boundary,
                     const std::vector<Element>& args) {
    if (boundary.size() != args.size() + 1)
        throw std::invalid_argument("multi_insert: need one more boundary element than arguments");
    const size_t k = args.size();
    Element out = el_zero(A);
    for (const auto& [key, val] : A.maps) {
        const size_t N = key.size();
        if (N < k) continue;
        // choose positions p_1 < ... < p_k for the arguments
        std::vector<size_t> pos(k);
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
            if (depth == k) {
                nv::Series c = nv::one<Cplx>(A.energy_cutoff);
                size_t seg = 0, next_arg = 0;
                for (size_t p = 0; p < N && !c.is_zero(); ++p) {
                    if (next_arg < k && pos[next_arg] == p) {
                        c = nv::mul(c, args[next_arg][key[p]]);
                        ++next_arg;
                        ++seg;
                    } else {
                        c = nv::mul(c, boundary[seg][key[p]]);
                    }
                }
                if (!c.is_zero()) out = el_add(out, el_scale(val, c));
                return;
            }
            for (size_t p = start; p + (k - depth) <= N; ++p) {
                pos[depth] = p;
                rec(p + 1, depth + 1);
            }
        };
        rec(0, 0);
    }
    return out;
}

namespace {

void check_convergent(const CurvedAInftyAlgebra& A) {
    for (const auto& [key, val] : A.maps) {
        if (key.size() < 3) continue;
        for (const auto& s : val) {
            auto v = nv::valuation(s);
            if (v && *v <= 0)
                throw std::invalid_argument(
                    "deform: arity >= 3 entry with nonpositive valuation violates convergence");
        }
    }
}

}  // namespace

CurvedAInftyAlgebra deform(const CurvedAInftyAlgebra& A, const MCElement& b) {
    if (!in_a_plus(A, b.b)) throw std::invalid_argument("deform: b is not in A^+");
    check_convergent(A);
    CurvedAInftyAlgebra D = A;
    D.maps.clear();
    for (const auto& [key, val] : A.maps) {
        const size_t N = key.size();
        // every subset of positions survives as the argument slots
        for (unsigned long mask = 0; mask < (1ul << N); ++mask) {
            nv::Series c = nv::one<Cplx>(A.energy_cutoff);
            std::vector<size_t> sub;
            for (size_t p = 0; p < N && !c.is_zero(); ++p) {
                if (mask & (1ul << p))
                    sub.push_back(key[p]);
                else
                    c = nv::mul(c, b.b[key[p]]);
            }
            if (c.is_zero()) continue;
            auto it = D.maps.find(sub);
            if (it == D.maps.end()) it = D.maps.emplace(sub, el_zero(A)).first;
            it->second = el_add(it->second, el_scale(val, c));
        }
    }
    for (auto it = D.maps.begin(); it != D.maps.end();) {
        if (el_is_zero(it->second))
            it = D.maps.erase(it);
        else
            ++it;
    }
    return D;
}

std::pair<bool, nv::Series> weak_mc_check(const CurvedAInftyAlgebra& A, const MCElement& b) {
    if (!A.unit_index) throw std::invalid_argument("weak_mc_check: strict unit required");
    if (!in_a_plus(A, b.b)) throw std::invalid_argument("weak_mc_check: b is not in A^+");
    Element cur = multi_insert(A, {b.b}, {});
    size_t u = *A.unit_index;
    bool ok = true;
    for (size_t i = 0; i < cur.size(); ++i)
        if (i != u && !cur[i].is_zero()) ok = false;
    return {ok, cur[u]};
}

double mu1b_squared(const CurvedAInftyAlgebra& A, const MCElement& b) {
    double worst = 0.0;
    for (size_t j = 0; j < A.basis.size(); ++j) {
        Element once = multi_insert(A, {b.b, b.b}, {el_basis(A, j)});
        Element twice = multi_insert(A, {b.b, b.b}, {once});
        worst = std::max(worst, el_norm(twice));
    }
    return worst;
}

bool gauge_verify(const CurvedAInftyAlgebra& A, const MCElement& b0, const MCElement& b1,
                  const Element& h) {
    if (!in_a_plus_plus(A, h)) throw std::invalid_argument("gauge_verify: h is not in A^{++}");
    Element lhs = multi_insert(A, {b0.b, b1.b}, {h});
    Element rhs = el_sub(b1.b, b0.b);
    return el_norm(el_sub(lhs, rhs)) <= nv::zero_tolerance();
}

MCElement gauge_partner(const CurvedAInftyAlgebra& A, const MCElement& b0, const Element& h) {
    auto strictly_positive = [](const Element& e) {
        for (const auto& s : e) {
            auto v = nv::valuation(s);
            if (v && *v <= 0) return false;
        }
        return true;
    };
    if (!strictly_positive(b0.b) || !strictly_positive(h))
        throw std::invalid_argument("gauge_partner: need strictly positive valuations");
    Element b1 = b0.b;
    for (int it = 0; it < 256; ++it) {
        Element next = el_add(b0.b, multi_insert(A, {b0.b, b1}, {h}));
        if (el_norm(el_sub(next, b1)) <= nv::zero_tolerance()) return {next};
        b1 = std::move(next);
    }
    throw std::runtime_error("gauge_partner: fixed-point iteration failed to stabilize");
}

Element gauge_compose(const CurvedAInftyAlgebra& A, const MCElement& b0, const MCElement& b1,
                      const MCElement& b2, const Element& h01, const Element& h12) {
    // both gauge arguments carry odd shifted degree, so the pairwise insertion
    // enters the composite with a Koszul minus sign relative to the unsigned
    // insertion sum
    Element correction = multi_insert(A, {b0.b, b1.b, b2.b}, {h01, h12});
    return el_sub(el_add(h01, h12), correction);
}

// -- cohomology -------------------------------------------------------------

namespace {

size_t series_rank(std::vector<std::vector<nv::Series>> M, std::vector<std::string>& warnings) {
    const size_t rows = M.size();
    const size_t cols = rows ? M[0].size() : 0;
    size_t rank = 0;
    std::vector<bool> used(rows, false);
    for (size_t col = 0; col < cols; ++col) {
        size_t sel = rows;
        std::optional<Rational> best;
        for (size_t i = 0; i < rows; ++i) {
            if (used[i]) continue;
            auto v = nv::valuation(M[i][col]);
            if (v && (!best || *v < *best)) {
                best = *v;
                sel = i;
            }
        }
        if (sel == rows) continue;
        used[sel] = true;
        ++rank;
        for (size_t i = 0; i < rows; ++i) {
            if (i == sel || M[i][col].is_zero()) continue;
            auto vi = nv::valuation(M[i][col]);
            if (*vi < *best) continue;  // cannot happen: sel minimizes
            nv::Series b_unit = M[sel][col], a = M[i][col];
            for (auto& t : b_unit.terms) t.exp -= *best;
            for (auto& t : a.terms) t.exp -= *best;
            nv::Series f = nv::mul(a, nv::invert_unit(b_unit));
            bool was_nonzero = false;
            for (size_t j = 0; j < cols; ++j) {
                was_nonzero = was_nonzero || !M[i][j].is_zero();
                M[i][j] = nv::sub(M[i][j], nv::mul(f, M[sel][j]));
            }
            bool now_zero = true;
            for (size_t j = 0; j < cols; ++j) now_zero = now_zero && M[i][j].is_zero();
            if (was_nonzero && now_zero && *best > 0)
                warnings.push_back("row eliminated to zero mod the energy cutoff; exactness "
                                   "beyond the cutoff is not certified");
        }
    }
    return rank;
}

RankTable graded_ranks(const CurvedAInftyAlgebra& A,
                       const std::function<nv::Series(size_t, size_t)>& entry) {
    RankTable table;
    std::map<long, std::vector<size_t>> by_deg;
    for (size_t i = 0; i < A.basis.size(); ++i)
        by_deg[mod_deg(degree_of(A, i), A.grading_modulus)].push_back(i);
    std::map<long, size_t> rank_out;  // rank of mu^1 restricted to degree d sources
    for (const auto& [d, cols] : by_deg) {
        std::vector<std::vector<nv::Series>> M;
        for (size_t i = 0; i < A.basis.size(); ++i) {
            std::vector<nv::Series> row;
            for (size_t j : cols) row.push_back(entry(i, j));
            M.push_back(std::move(row));
        }
        rank_out[d] = series_rank(std::move(M), table.warnings);
    }
    for (const auto& [d, gens] : by_deg) {
        long rk = long(gens.size()) - long(rank_out[d]);
        long d_prev = A.grading_modulus == 0 ? d - 1
                                             : mod_deg(d - 1, A.grading_modulus);
        auto it = rank_out.find(d_prev);
        if (it != rank_out.end()) rk -= long(it->second);
        table.ranks[d] = rk;
    }
    return table;
}

}  // namespace

RankTable cohomology_rank(const CurvedAInftyAlgebra& A, const MCElement& b) {
    auto [ok, W] = weak_mc_check(A, b);
    if (!ok)
        throw std::invalid_argument("cohomology_rank: b does not solve the weak MC equation");
    std::vector<Element> images;
    for (size_t j = 0; j < A.basis.size(); ++j)
        images.push_back(multi_insert(A, {b.b, b.b}, {el_basis(A, j)}));
    return graded_ranks(A, [&](size_t i, size_t j) { return images[j][i]; });
}

RankTable morse_page(const CurvedAInftyAlgebra& A) {
    // q^0 part of the undeformed mu^1
    std::vector<Element> images;
    for (size_t j = 0; j < A.basis.size(); ++j) {
        Element im = el_zero(A);
        auto it = A.maps.find({j});
        if (it != A.maps.end()) {
            for (size_t i = 0; i < im.size(); ++i) {
                const auto& s = it->second[i];
                if (!s.terms.empty() && s.terms.front().exp == 0)
                    im[i] = nv::monomial<Cplx>(Rational(0), s.terms.front().coef,
                                               A.energy_cutoff);
            }
        }
        images.push_back(std::move(im));
    }
    return graded_ranks(A, [&](size_t i, size_t j) { return images[j][i]; });
}

}  // namespace mmpfloer::ainfty

#include <mmpfloer/potential.hpp>

#include <mmpfloer/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmpfloer::potential {

namespace {

namespace nv = mmpfloer::novikov;
using Cplx = std::complex<double>;

bool coef_zero(const Cplx& c) { return std::abs(c) <= nv::zero_tolerance(); }

bool term_less(const PotentialTerm& a, const PotentialTerm& b) {
    if (a.area != b.area) return a.area < b.area;
    return a.exponent < b.exponent;
}

nv::LocalSystem truncate_system(const nv::LocalSystem& y, const Rational& T) {
    nv::LocalSystem out;
    for (const auto& v : y.values) out.values.push_back(nv::truncate(v, T));
    return out;
}

Rational system_trunc(const nv::LocalSystem& y) {
    if (y.values.empty()) throw std::invalid_argument("empty local system");
    return y.values.front().trunc;
}

}  // namespace

LaurentPotential make_potential(size_t dim, std::vector<PotentialTerm> terms, Rational trunc) {
    if (dim == 0) throw std::invalid_argument("make_potential: dim must be positive");
    for (const auto& t : terms) {
        if (t.area < 0) throw std::invalid_argument("make_potential: negative area");
        if (t.exponent.size() != dim)
            throw std::invalid_argument("make_potential: exponent of wrong dimension");
    }
    std::sort(terms.begin(), terms.end(), term_less);
    LaurentPotential W;
    W.dim = dim;
    W.trunc = std::move(trunc);
    for (auto& t : terms) {
        if (t.area >= W.trunc) continue;
        if (!W.terms.empty() && W.terms.back().area == t.area &&
            W.terms.back().exponent == t.exponent) {
            W.terms.back().coef += t.coef;
            if (coef_zero(W.terms.back().coef)) W.terms.pop_back();
        } else if (!coef_zero(t.coef)) {
            W.terms.push_back(std::move(t));
        }
    }
    return W;
}

LaurentPotential toric_potential(const polytope::Polytope& P, const QVector& lambda,
                                 const Rational& trunc) {
    if (!polytope::is_interior(P, lambda))
        throw std::invalid_argument("toric_potential: point is not interior");
    QVector gaps = polytope::facet_gaps(P, lambda);
    std::vector<PotentialTerm> terms;
    for (size_t j = 0; j < P.normals.size(); ++j)
        terms.push_back({gaps[j], P.normals[j], Cplx(1.0, 0.0)});
    return make_potential(P.dim, std::move(terms), trunc);
}

long blaschke_maslov(const std::vector<long>& degrees) {
    long s = 0;
    for (long d : degrees) {
        if (d < 0) throw std::invalid_argument("blaschke_maslov: negative degree");
        s += d;
    }
    return 2 * s;
}

LaurentPotential leading_part(const LaurentPotential& W) {
    if (W.terms.empty()) throw std::invalid_argument("leading_part: empty potential");
    Rational a0 = W.terms.front().area;
    LaurentPotential out;
    out.dim = W.dim;
    out.trunc = W.trunc;
    for (const auto& t : W.terms)
        if (t.area == a0) out.terms.push_back(t);
    return out;
}

LaurentPotential log_derivative(const LaurentPotential& W, size_t i) {
    if (i >= W.dim) throw std::invalid_argument("log_derivative: variable index out of range");
    LaurentPotential out;
    out.dim = W.dim;
    out.trunc = W.trunc;
    for (const auto& t : W.terms) {
        if (t.exponent[i] == 0) continue;
        PotentialTerm s = t;
        s.coef *= double(t.exponent[i]);
        out.terms.push_back(std::move(s));
    }
    return out;
}

nv::Series evaluate(const LaurentPotential& W, const nv::LocalSystem& y) {
    if (y.dim() != W.dim) throw std::invalid_argument("evaluate: local system dimension mismatch");
    Rational T = std::min(W.trunc, system_trunc(y));
    nv::LocalSystem yt = truncate_system(y, T);
    nv::Series acc = nv::zero<Cplx>(T);
    for (const auto& t : W.terms) {
        if (t.area >= T) continue;
        nv::Series m = nv::mul(nv::monomial<Cplx>(t.area, t.coef, T), nv::monomial_eval(yt, t.exponent));
        acc = nv::add(acc, m);
    }
    return acc;
}

LaurentPotential exceptional_model(long n_plus, long n_minus, const Rational& eps,
                                   const Rational& trunc) {
    if (n_minus < 1 || n_plus <= n_minus)
        throw std::invalid_argument("exceptional_model: need n_plus > n_minus >= 1");
    long n = n_plus + n_minus;
    size_t d = size_t(n - 1);
    std::vector<PotentialTerm> terms;
    for (size_t i = 0; i < d; ++i) {
        ZVector e(d, 0);
        e[i] = 1;
        terms.push_back({eps, std::move(e), Cplx(1.0, 0.0)});
    }
    ZVector v(d, -1);
    for (long i = 0; i < n_plus; ++i) v[size_t(i)] = 1;
    terms.push_back({eps, std::move(v), Cplx(1.0, 0.0)});
    return make_potential(d, std::move(terms), trunc);
}

long multiplicity(long n_plus, long n_minus) {
    if (!(n_plus > n_minus && n_minus >= 1))
        throw std::invalid_argument("multiplicity: invalid weight signature");
    return n_plus - n_minus;
}

// -- critical points at leading order ---------------------------------------

namespace {

struct LeadingData {
    Rational area;
    std::vector<ZVector> exps;
    std::vector<Cplx> coefs;
};

LeadingData leading_data(const LaurentPotential& W0) {
    if (W0.terms.empty())
        throw std::invalid_argument("critical_points_leading: empty potential");
    LeadingData d;
    d.area = W0.terms.front().area;
    for (const auto& t : W0.terms) {
        if (t.area != d.area)
            throw std::invalid_argument(
                "critical_points_leading: potential not concentrated at one area");
        d.exps.push_back(t.exponent);
        d.coefs.push_back(t.coef);
    }
    return d;
}

// gradient of the constant-coefficient part: F_i(y) = sum_j nu_{j,i} c_j y^{nu_j}
linalg::CVector grad_at(const LeadingData& d, size_t dim, const linalg::CVector& y) {
    linalg::CVector F(dim, Cplx(0.0));
    for (size_t j = 0; j < d.exps.size(); ++j) {
        Cplx mono = d.coefs[j];
        for (size_t i = 0; i < dim; ++i) mono *= std::pow(y[i], double(d.exps[j][i]));
        for (size_t i = 0; i < dim; ++i) F[i] += double(d.exps[j][i]) * mono;
    }
    return F;
}

linalg::CMatrix jac_at(const LeadingData& d, size_t dim, const linalg::CVector& y) {
    linalg::CMatrix J(dim, linalg::CVector(dim, Cplx(0.0)));
    for (size_t j = 0; j < d.exps.size(); ++j) {
        Cplx mono = d.coefs[j];
        for (size_t i = 0; i < dim; ++i) mono *= std::pow(y[i], double(d.exps[j][i]));
        for (size_t i = 0; i < dim; ++i)
            for (size_t k = 0; k < dim; ++k)
                J[i][k] += double(d.exps[j][i]) * double(d.exps[j][k]) * mono / y[k];
    }
    return J;
}

double vec_norm(const linalg::CVector& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

// exceptional-shape recognizer: terms {sigma e_1..e_d, sigma v} with
// v in {-1,1}^d, all coefficients 1
std::optional<std::vector<linalg::CVector>> closed_form_roots(const LeadingData& d, size_t dim) {
    if (d.exps.size() != dim + 1) return std::nullopt;
    for (const auto& c : d.coefs)
        if (std::abs(c - Cplx(1.0)) > 1e-9) return std::nullopt;
    for (int sigma : {1, -1}) {
        std::vector<bool> unit_seen(dim, false);
        ZVector v;
        bool ok = true;
        for (const auto& e : d.exps) {
            long nonzero = 0, idx = -1;
            bool mixed = false;
            for (size_t i = 0; i < dim; ++i) {
                if (e[i] == sigma) {
                    ++nonzero;
                    idx = long(i);
                } else if (e[i] != 0) {
                    mixed = true;
                }
            }
            if (!mixed && nonzero == 1 && !unit_seen[size_t(idx)]) {
                unit_seen[size_t(idx)] = true;
            } else if (v.empty()) {
                v = e;
            } else {
                ok = false;
                break;
            }
        }
        if (!ok || v.empty()) continue;
        for (bool s : unit_seen) ok = ok && s;
        long p = 0;
        for (size_t i = 0; i < dim; ++i) {
            if (v[i] == sigma)
                ++p;
            else if (v[i] != -sigma)
                ok = false;
        }
        if (!ok) continue;
        // with y_i = -v_i t (sigma=1; inverted for sigma=-1), t solves
        // t^m = (-1)^p, m = 2p - dim - 1
        long m = 2 * p - long(dim) - 1;
        if (m <= 0) {
            if (m == 0 && p % 2 == 1) return std::vector<linalg::CVector>{};
            return std::nullopt;
        }
        std::vector<linalg::CVector> roots;
        for (long k = 0; k < m; ++k) {
            double theta = std::numbers::pi * (double(p) + 2.0 * double(k)) / double(m);
            Cplx t = std::polar(1.0, theta);
            linalg::CVector y(dim);
            for (size_t i = 0; i < dim; ++i) {
                Cplx zi = (v[i] == sigma ? -t : t);  // z = y^sigma
                y[i] = sigma == 1 ? zi : 1.0 / zi;
            }
            roots.push_back(std::move(y));
        }
        return roots;
    }
    return std::nullopt;
}

std::optional<std::vector<linalg::CVector>> univariate_roots(const LeadingData& d) {
    long lo = 0, hi = 0;
    for (const auto& e : d.exps) {
        lo = std::min(lo, e[0]);
        hi = std::max(hi, e[0]);
    }
    linalg::CVector coeffs(size_t(hi - lo) + 1, Cplx(0.0));
    for (size_t j = 0; j < d.exps.size(); ++j)
        coeffs[size_t(d.exps[j][0] - lo)] += double(d.exps[j][0]) * d.coefs[j];
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    size_t lead_zeros = 0;
    while (lead_zeros < coeffs.size() && std::abs(coeffs[lead_zeros]) == 0.0) ++lead_zeros;
    coeffs.erase(coeffs.begin(), coeffs.begin() + long(lead_zeros));
    std::vector<linalg::CVector> roots;
    if (coeffs.size() <= 1) return roots;  // derivative has no roots away from 0
    for (const auto& z : linalg::poly_roots(coeffs))
        if (std::abs(std::abs(z) - 1.0) < 1e-6) roots.push_back({z});
    return roots;
}

std::vector<linalg::CVector> newton_grid_roots(const LeadingData& d, size_t dim) {
    size_t k = dim <= 2 ? 8 : (dim == 3 ? 6 : 4);
    std::vector<linalg::CVector> found;
    std::vector<size_t> idx(dim, 0);
    size_t seeds = 0, converged = 0;
    while (true) {
        linalg::CVector y(dim);
        for (size_t i = 0; i < dim; ++i)
            y[i] = std::polar(1.0, 2.0 * std::numbers::pi * (double(idx[i]) + 0.5) / double(k));
        ++seeds;
        bool ok = true;
        for (int it = 0; it < 80; ++it) {
            linalg::CVector F = grad_at(d, dim, y);
            if (vec_norm(F) <= 1e-12) break;
            linalg::CMatrix J = jac_at(d, dim, y);
            linalg::CVector step;
            if (!linalg::solve_complex(J, F, step)) {
                ok = false;
                break;
            }
            for (size_t i = 0; i < dim; ++i) y[i] -= step[i];
            for (size_t i = 0; i < dim; ++i) ok = ok && std::isfinite(std::abs(y[i]));
            if (!ok) break;
        }
        ok = ok && vec_norm(grad_at(d, dim, y)) <= 1e-12;
        for (size_t i = 0; ok && i < dim; ++i)
            ok = std::abs(y[i]) > 1e-9 && std::abs(std::abs(y[i]) - 1.0) < 1e-6;
        if (ok) {
            ++converged;
            bool dup = false;
            for (const auto& w : found) {
                double dist = 0.0;
                for (size_t i = 0; i < dim; ++i) dist = std::max(dist, std::abs(w[i] - y[i]));
                dup = dup || dist < 1e-6;
            }
            if (!dup) found.push_back(std::move(y));
        }
        size_t pos = 0;
        while (pos < dim && ++idx[pos] == k) idx[pos++] = 0;
        if (pos == dim) break;
    }
    if (converged == 0)
        throw std::runtime_error("critical_points_leading: Newton failed to converge from all " +
                                 std::to_string(seeds) + " seeds");
    return found;
}

}  // namespace

std::vector<CriticalPoint> critical_points_leading(const LaurentPotential& W0) {
    LeadingData d = leading_data(W0);
    std::vector<linalg::CVector> roots;
    if (auto cf = closed_form_roots(d, W0.dim)) {
        roots = *cf;
    } else if (W0.dim == 1) {
        if (auto uv = univariate_roots(d)) roots = *uv;
    } else {
        roots = newton_grid_roots(d, W0.dim);
    }
    std::sort(roots.begin(), roots.end(), [](const linalg::CVector& a, const linalg::CVector& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i].real() - b[i].real()) > 1e-9) return a[i].real() < b[i].real();
            if (std::abs(a[i].imag() - b[i].imag()) > 1e-9) return a[i].imag() < b[i].imag();
        }
        return false;
    });
    std::vector<CriticalPoint> out;
    for (const auto& r : roots) {
        CriticalPoint cp;
        cp.y = nv::constant_system(r, W0.trunc);
        Hessian H = hessian_log(W0, cp.y);
        cp.hessian_det = H.det;
        cp.nondegenerate = !cp.hessian_det.is_zero();
        cp.residual_order = W0.trunc;
        out.push_back(std::move(cp));
    }
    return out;
}

Hessian hessian_log(const LaurentPotential& W, const nv::LocalSystem& y) {
    if (y.dim() != W.dim)
        throw std::invalid_argument("hessian_log: local system dimension mismatch");
    y.validate();
    Rational T = std::min(W.trunc, system_trunc(y));
    nv::LocalSystem yt = truncate_system(y, T);
    Hessian H;
    H.matrix.assign(W.dim, std::vector<nv::Series>(W.dim, nv::zero<Cplx>(T)));
    for (const auto& t : W.terms) {
        if (t.area >= T) continue;
        nv::Series m = nv::mul(nv::monomial<Cplx>(t.area, t.coef, T), nv::monomial_eval(yt, t.exponent));
        for (size_t i = 0; i < W.dim; ++i) {
            if (t.exponent[i] == 0) continue;
            for (size_t j = 0; j < W.dim; ++j) {
                if (t.exponent[j] == 0) continue;
                double w = double(t.exponent[i]) * double(t.exponent[j]);
                H.matrix[i][j] = nv::add(H.matrix[i][j], nv::scale(m, Cplx(w)));
            }
        }
    }
    // Leibniz expansion; dims here are at most 4
    std::vector<size_t> perm(W.dim);
    for (size_t i = 0; i < W.dim; ++i) perm[i] = i;
    H.det = nv::zero<Cplx>(T);
    do {
        int sign = 1;
        for (size_t i = 0; i < W.dim; ++i)
            for (size_t j = i + 1; j < W.dim; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        nv::Series prod = nv::one<Cplx>(T);
        for (size_t i = 0; i < W.dim; ++i) prod = nv::mul(prod, H.matrix[i][perm[i]]);
        H.det = nv::add(H.det, nv::scale(prod, Cplx(double(sign))));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return H;
}

namespace {

// a / b over Lambda assuming val(a) >= val(b); precision is kept at the
// common truncation order (adequate for the exact small systems here)
nv::Series div_series(const nv::Series& a, const nv::Series& b) {
    if (a.is_zero()) return a;
    auto va = nv::valuation(a), vb = nv::valuation(b);
    if (!vb) throw std::domain_error("division by zero series");
    if (*va < *vb) throw std::domain_error("series division would leave the ring");
    nv::Series bu = b, as = a;
    for (auto& t : bu.terms) t.exp -= *vb;
    for (auto& t : as.terms) t.exp -= *vb;
    return nv::mul(as, nv::invert_unit(bu));
}

// solve H x = r by elimination with minimal-valuation pivoting
std::vector<nv::Series> solve_series(std::vector<std::vector<nv::Series>> H,
                                     std::vector<nv::Series> r) {
    const size_t n = H.size();
    for (size_t col = 0; col < n; ++col) {
        size_t sel = n;
        std::optional<Rational> best;
        for (size_t i = col; i < n; ++i) {
            auto v = nv::valuation(H[i][col]);
            if (v && (!best || *v < *best)) {
                best = *v;
                sel = i;
            }
        }
        if (sel == n) throw std::domain_error("newton_lift: degenerate Hessian");
        std::swap(H[sel], H[col]);
        std::swap(r[sel], r[col]);
        for (size_t i = 0; i < n; ++i) {
            if (i == col || H[i][col].is_zero()) continue;
            nv::Series f = div_series(H[i][col], H[col][col]);
            for (size_t j = col; j < n; ++j)
                H[i][j] = nv::sub(H[i][j], nv::mul(f, H[col][j]));
            r[i] = nv::sub(r[i], nv::mul(f, r[col]));
        }
    }
    std::vector<nv::Series> x;
    for (size_t i = 0; i < n; ++i) x.push_back(div_series(r[i], H[i][i]));
    return x;
}

}  // namespace

CriticalPoint newton_lift(const LaurentPotential& W, const CriticalPoint& y0, const Rational& E) {
    if (E > W.trunc)
        throw std::invalid_argument("newton_lift: requested order exceeds the potential truncation");
    if (!y0.nondegenerate) throw std::domain_error("newton_lift: degenerate Hessian at the seed");
    std::vector<LaurentPotential> ders;
    for (size_t i = 0; i < W.dim; ++i) ders.push_back(log_derivative(W, i));

    // every coefficient of the evaluated derivatives, of the Hessian, and of
    // the cubic Taylor remainder of a Newton step is divisible by q^w, so a
    // step with correction valuation v leaves a residual of valuation >= w + 2v
    Rational w = E;
    for (const auto& t : W.terms) w = std::min(w, t.area);

    nv::LocalSystem y = truncate_system(y0.y, E);
    std::optional<Rational> prev_val;
    std::optional<Rational> settled;  // orders below this are cancelled exactly
    for (int guard = 0; guard < 1024; ++guard) {
        std::vector<nv::Series> resid;
        std::optional<Rational> rv;
        for (const auto& D : ders) {
            nv::Series r = evaluate(D, y);
            if (settled) {
                // below the guaranteed gain the previous step cancels the
                // residual exactly; what floating point leaves is roundoff
                std::vector<nv::Series::Term> keep;
                for (auto& t : r.terms)
                    if (t.exp >= *settled) keep.push_back(t);
                r = nv::make_series<Cplx>(std::move(keep), r.trunc);
            }
            auto v = nv::valuation(r);
            if (v && (!rv || *v < *rv)) rv = *v;
            resid.push_back(std::move(r));
        }
        if (!rv) break;  // all derivatives vanish mod q^E
        if (prev_val && !(*rv > *prev_val))
            throw std::runtime_error("newton_lift: no valuation gain, stuck at order " +
                                     rational_to_string(*rv));
        prev_val = rv;
        Hessian H = hessian_log(W, y);
        std::vector<nv::Series> rhs;
        for (auto& r : resid) rhs.push_back(nv::neg(r));
        std::vector<nv::Series> x = solve_series(H.matrix, rhs);
        std::optional<Rational> vx;
        for (size_t i = 0; i < W.dim; ++i) {
            auto v = nv::valuation(x[i]);
            if (!v) continue;
            if (*v <= 0)
                throw std::runtime_error("newton_lift: correction fails to gain valuation");
            if (!vx || *v < *vx) vx = *v;
            // the Hessian pivots carry valuation >= w, so the correction is
            // only determined below E - w; drop the tail (it moves the
            // residual above q^E only)
            std::vector<nv::Series::Term> keep;
            for (auto& t : x[i].terms)
                if (t.exp < E - w) keep.push_back(t);
            x[i] = nv::make_series<Cplx>(std::move(keep), x[i].trunc);
            y.values[i] = nv::mul(y.values[i], nv::exp_positive(x[i]));
        }
        if (vx) {
            settled = w + Rational(2) * *vx;
            if (*settled >= E) break;  // the next residual vanishes mod q^E
        }
    }
    CriticalPoint out;
    out.y = y;
    Hessian H = hessian_log(W, y);
    out.hessian_det = H.det;
    out.nondegenerate = !out.hessian_det.is_zero();
    out.residual_order = E;
    return out;
}

HFCertificate hf_certificate(const LaurentPotential& W, const CriticalPoint& y) {
    HFCertificate cert;
    cert.residual_order = system_trunc(y.y);
    for (size_t i = 0; i < W.dim; ++i) {
        nv::Series r = evaluate(log_derivative(W, i), y.y);
        if (!r.is_zero()) {
            cert.granted = false;
            cert.reason = "derivative " + std::to_string(i) + " nonvanishing at order " +
                          rational_to_string(*nv::valuation(r));
            cert.potential_value = evaluate(W, y.y);
            return cert;
        }
    }
    cert.granted = true;
    cert.reason = "all log-derivatives vanish mod q^" + rational_to_string(cert.residual_order) +
                  "; mu^1 = 0 on degree-one generators, HF = H(L) as graded modules";
    cert.potential_value = evaluate(W, y.y);
    cert.rank = 1L << W.dim;
    return cert;
}

}  // namespace mmpfloer::potential

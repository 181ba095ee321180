#ifndef MMPFLOER_NOVIKOV_HPP
#define MMPFLOER_NOVIKOV_HPP

#include <mmpfloer/rational.hpp>

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>

// Truncated arithmetic in the universal Novikov field: finite sums
// sum_i c_i q^{rho_i} with exact rational exponents, considered modulo
// q^trunc.  Two coefficient modes are supported: complex doubles with a
// configurable zero tolerance, and exact rationals.

namespace mmpfloer::novikov {

double zero_tolerance();
void set_zero_tolerance(double tol);

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<std::complex<double>> {
    static bool is_zero(const std::complex<double>& c) {
        return std::abs(c) <= zero_tolerance();
    }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> invert(const std::complex<double>& c) { return one() / c; }
};

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& c) { return c == 0; }
    static Rational one() { return Rational(1); }
    static Rational invert(const Rational& c) { return Rational(1) / c; }
};

template <class C>
struct BasicSeries {
    struct Term {
        Rational exp;
        C coef;
    };
    std::vector<Term> terms;  // strictly increasing exponents, all < trunc
    Rational trunc = Rational(10);

    bool is_zero() const { return terms.empty(); }
};

using Series = BasicSeries<std::complex<double>>;
using ExactSeries = BasicSeries<Rational>;

namespace detail {
template <class C>
void normalize(BasicSeries<C>& s) {
    std::stable_sort(s.terms.begin(), s.terms.end(),
                     [](const auto& a, const auto& b) { return a.exp < b.exp; });
    std::vector<typename BasicSeries<C>::Term> out;
    out.reserve(s.terms.size());
    for (const auto& t : s.terms) {
        if (t.exp >= s.trunc) continue;
        if (!out.empty() && out.back().exp == t.exp) {
            out.back().coef += t.coef;
        } else {
            out.push_back(t);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return CoeffOps<C>::is_zero(t.coef); }),
              out.end());
    s.terms = std::move(out);
}

inline void require_same_trunc(const Rational& a, const Rational& b) {
    if (a != b)
        throw std::invalid_argument("mismatched truncation orders: " + rational_to_string(a) +
                                    " vs " + rational_to_string(b));
}
}  // namespace detail

template <class C>
BasicSeries<C> make_series(std::vector<typename BasicSeries<C>::Term> terms, Rational trunc) {
    BasicSeries<C> s;
    s.terms = std::move(terms);
    s.trunc = std::move(trunc);
    detail::normalize(s);
    return s;
}

template <class C>
BasicSeries<C> zero(Rational trunc) {
    BasicSeries<C> s;
    s.trunc = std::move(trunc);
    return s;
}

template <class C>
BasicSeries<C> monomial(Rational exp, C coef, Rational trunc) {
    BasicSeries<C> s;
    s.trunc = std::move(trunc);
    if (exp < s.trunc && !CoeffOps<C>::is_zero(coef)) s.terms.push_back({std::move(exp), coef});
    return s;
}

template <class C>
BasicSeries<C> one(Rational trunc) {
    return monomial<C>(Rational(0), CoeffOps<C>::one(), std::move(trunc));
}

template <class C>
BasicSeries<C> add(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    detail::require_same_trunc(a.trunc, b.trunc);
    BasicSeries<C> out;
    out.trunc = a.trunc;
    out.terms.reserve(a.terms.size() + b.terms.size());
    auto ia = a.terms.begin(), ib = b.terms.begin();
    while (ia != a.terms.end() || ib != b.terms.end()) {
        if (ib == b.terms.end() || (ia != a.terms.end() && ia->exp < ib->exp)) {
            out.terms.push_back(*ia++);
        } else if (ia == a.terms.end() || ib->exp < ia->exp) {
            out.terms.push_back(*ib++);
        } else {
            C c = ia->coef + ib->coef;
            if (!CoeffOps<C>::is_zero(c)) out.terms.push_back({ia->exp, c});
            ++ia;
            ++ib;
        }
    }
    return out;
}

template <class C>
BasicSeries<C> neg(const BasicSeries<C>& a) {
    BasicSeries<C> out = a;
    for (auto& t : out.terms) t.coef = -t.coef;
    return out;
}

template <class C>
BasicSeries<C> sub(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    return add(a, neg(b));
}

template <class C>
BasicSeries<C> scale(const BasicSeries<C>& a, const C& c) {
    BasicSeries<C> out;
    out.trunc = a.trunc;
    if (CoeffOps<C>::is_zero(c)) return out;
    out.terms = a.terms;
    for (auto& t : out.terms) t.coef *= c;
    detail::normalize(out);
    return out;
}

template <class C>
BasicSeries<C> mul(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    detail::require_same_trunc(a.trunc, b.trunc);
    BasicSeries<C> out;
    out.trunc = a.trunc;
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            Rational e = ta.exp + tb.exp;
            if (e >= out.trunc) continue;
            out.terms.push_back({std::move(e), ta.coef * tb.coef});
        }
    }
    detail::normalize(out);
    return out;
}

/// Exponent of the leading term; nullopt encodes +infinity (zero series).
template <class C>
std::optional<Rational> valuation(const BasicSeries<C>& a) {
    if (a.terms.empty()) return std::nullopt;
    return a.terms.front().exp;
}

template <class C>
C leading_coef(const BasicSeries<C>& a) {
    if (a.terms.empty()) throw std::domain_error("leading coefficient of zero series");
    return a.terms.front().coef;
}

template <class C>
bool is_unit(const BasicSeries<C>& a) {
    return !a.terms.empty() && a.terms.front().exp == 0;
}

/// Leading-term inversion plus geometric-series recursion; requires
/// valuation 0 and nonzero leading coefficient.
template <class C>
BasicSeries<C> invert_unit(const BasicSeries<C>& a) {
    if (!is_unit(a))
        throw std::domain_error("invert_unit: series is not a unit (valuation != 0)");
    C c0inv = CoeffOps<C>::invert(a.terms.front().coef);
    // a = c0 (1 + r), val(r) > 0.
    BasicSeries<C> r = scale(a, c0inv);
    r.terms.erase(r.terms.begin());
    BasicSeries<C> acc = one<C>(a.trunc);
    BasicSeries<C> pw = one<C>(a.trunc);
    while (true) {
        pw = mul(pw, r);
        if (pw.terms.empty()) break;
        acc = sub(acc, pw);
        pw = neg(pw);  // accumulate (-r)^k
    }
    return scale(acc, c0inv);
}

template <class C>
BasicSeries<C> truncate(const BasicSeries<C>& a, const Rational& E) {
    if (E > a.trunc)
        throw std::invalid_argument("truncate: requested order exceeds known order");
    BasicSeries<C> out;
    out.trunc = E;
    for (const auto& t : a.terms)
        if (t.exp < E) out.terms.push_back(t);
    return out;
}

/// Multiply by q^delta (shifts all exponents and the truncation order).
template <class C>
BasicSeries<C> shift(const BasicSeries<C>& a, const Rational& delta) {
    BasicSeries<C> out;
    out.trunc = a.trunc + delta;
    out.terms = a.terms;
    for (auto& t : out.terms) t.exp += delta;
    return out;
}

template <class C>
BasicSeries<C> pow_int(const BasicSeries<C>& a, long k) {
    if (k < 0) return pow_int(invert_unit(a), -k);
    BasicSeries<C> acc = one<C>(a.trunc);
    BasicSeries<C> base = a;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

/// Truncated exponential; terminates because val(a) > 0.
template <class C>
BasicSeries<C> exp_positive(const BasicSeries<C>& a) {
    auto v = valuation(a);
    if (v && *v <= 0)
        throw std::domain_error("exp_positive: argument must have positive valuation");
    BasicSeries<C> acc = one<C>(a.trunc);
    BasicSeries<C> term = one<C>(a.trunc);
    long k = 1;
    while (true) {
        term = mul(term, a);
        term = scale(term, C(CoeffOps<C>::one() / C(double(k))));
        if (term.terms.empty()) break;
        acc = add(acc, term);
        ++k;
    }
    return acc;
}

// exact-rational specialization: 1/k stays rational
template <>
inline BasicSeries<Rational> exp_positive(const BasicSeries<Rational>& a) {
    auto v = valuation(a);
    if (v && *v <= 0)
        throw std::domain_error("exp_positive: argument must have positive valuation");
    BasicSeries<Rational> acc = one<Rational>(a.trunc);
    BasicSeries<Rational> term = one<Rational>(a.trunc);
    long k = 1;
    while (true) {
        term = mul(term, a);
        term = scale(term, Rational(1, k));
        if (term.terms.empty()) break;
        acc = add(acc, term);
        ++k;
    }
    return acc;
}

inline double abs_coef(const std::complex<double>& c) { return std::abs(c); }
inline double abs_coef(const Rational& c) { return std::abs(to_double(c)); }

/// Max coefficient magnitude; 0 for the zero series.
template <class C>
double sup_norm(const BasicSeries<C>& a) {
    double m = 0.0;
    for (const auto& t : a.terms) m = std::max(m, abs_coef(t.coef));
    return m;
}

template <class C>
bool approx_equal(const BasicSeries<C>& a, const BasicSeries<C>& b, double tol) {
    return sup_norm(sub(a, b)) <= tol;
}

template <class C>
bool exact_equal(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    detail::require_same_trunc(a.trunc, b.trunc);
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].exp != b.terms[i].exp || a.terms[i].coef != b.terms[i].coef) return false;
    return true;
}

/// A local system Hom(pi_1(L), unit group): one unit series per H^1 generator.
struct LocalSystem {
    std::vector<Series> values;

    size_t dim() const { return values.size(); }
    void validate() const {
        for (const auto& v : values)
            if (!is_unit(v))
                throw std::domain_error("local system entry is not a unit");
    }
};

inline LocalSystem constant_system(const std::vector<std::complex<double>>& vals, Rational trunc) {
    LocalSystem y;
    for (const auto& c : vals) y.values.push_back(monomial<std::complex<double>>(Rational(0), c, trunc));
    y.validate();
    return y;
}

/// Evaluate y^nu = prod y_i^{nu_i}; negative powers go through invert_unit.
inline Series monomial_eval(const LocalSystem& y, const ZVector& nu) {
    if (nu.size() != y.dim())
        throw std::invalid_argument("monomial_eval: exponent length mismatch");
    if (y.values.empty()) throw std::invalid_argument("monomial_eval: empty local system");
    Series acc = one<std::complex<double>>(y.values.front().trunc);
    for (size_t i = 0; i < nu.size(); ++i)
        if (nu[i] != 0) acc = mul(acc, pow_int(y.values[i], nu[i]));
    return acc;
}

}  // namespace mmpfloer::novikov

#endif

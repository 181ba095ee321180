#ifndef MMPFLOER_AINFTY_HPP
#define MMPFLOER_AINFTY_HPP

#include <mmpfloer/novikov.hpp>
#include <mmpfloer/rational.hpp>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

// Finite curved A-infinity algebras over Lambda_{>=0}, truncated in energy
// (q-order) and arity.  Composition maps are stored as a sparse table on
// basis tuples; everything downstream (axiom checks, Maurer-Cartan theory,
// gauge equivalence, cohomology) is exhaustive evaluation below the cutoffs.

namespace mmpfloer::ainfty {

struct Generator {
    std::string name;
    long degree = 0;  // integer lift; the mod-g degree is degree mod grading_modulus
};

/// Coefficient vector over the basis; all series share the energy cutoff.
using Element = std::vector<novikov::Series>;

struct CurvedAInftyAlgebra {
    long grading_modulus = 0;  // even; 0 encodes an honest Z-grading
    std::vector<Generator> basis;
    std::optional<size_t> unit_index;
    size_t arity_cutoff = 3;
    Rational energy_cutoff = Rational(10);
    // key: input basis indices (empty key stores the curvature mu^0(1))
    std::map<std::vector<size_t>, Element> maps;
};

struct MCElement {
    Element b;
};

struct AInftyReport {
    double max_residual = 0.0;
    struct Offender {
        std::vector<size_t> inputs;
        double residual;
    };
    std::vector<Offender> offenders;  // tuples with nonzero residual
};

struct RankTable {
    std::map<long, long> ranks;  // degree (mod g) -> rank
    std::vector<std::string> warnings;
};

// -- construction -----------------------------------------------------------

/// Validates: even modulus, coefficient valuations >= 0, arity bounds, and
/// the degree bookkeeping deg(out) = sum deg(in) + 2 - n mod g.
CurvedAInftyAlgebra make_algebra(long grading_modulus, std::vector<Generator> basis,
                                 std::optional<size_t> unit_index, size_t arity_cutoff,
                                 Rational energy_cutoff,
                                 std::map<std::vector<size_t>, Element> maps);

/// mu^2(a,b) = (-1)^{|a|} a.b from associative structure constants
/// (e_i e_j = sum_k c e_k), plus an optional differential mu^1(e_i) = sum c e_j.
CurvedAInftyAlgebra from_dg(long grading_modulus, std::vector<Generator> basis,
                            std::optional<size_t> unit_index, Rational energy_cutoff,
                            const std::vector<std::tuple<size_t, size_t, size_t, std::complex<double>>>& products,
                            const std::vector<std::tuple<size_t, size_t, novikov::Series>>& differential);

/// Exterior algebra on n degree-one generators x_1..x_n (unital, Z-graded):
/// basis indexed by subsets in colex order, names like "x1^x3".
CurvedAInftyAlgebra exterior_algebra(size_t n, const Rational& energy_cutoff);

/// Z_2-graded Koszul model: exterior algebra on n generators with the
/// derivation mu^1(x_i) = c_i and curvature w.e; the common case of a
/// Lagrangian torus with disk-potential derivative values c_i.
CurvedAInftyAlgebra koszul_model(size_t n, const std::vector<novikov::Series>& c,
                                 const novikov::Series& curvature);

// -- element helpers --------------------------------------------------------

Element el_zero(const CurvedAInftyAlgebra& A);
Element el_basis(const CurvedAInftyAlgebra& A, size_t i);
Element el_add(const Element& a, const Element& b);
Element el_sub(const Element& a, const Element& b);
Element el_scale(const Element& a, const novikov::Series& c);
bool el_is_zero(const Element& a);
double el_norm(const Element& a);

/// Multilinear evaluation of mu^{args.size()} (args.size() = 0 returns the
/// curvature mu^0(1)).
Element apply_mu(const CurvedAInftyAlgebra& A, const std::vector<Element>& args);

// -- axioms -----------------------------------------------------------------

/// A-infinity associativity residuals: sum_{m,n} (-1)^{n + |a_1|+...+|a_n|}
/// mu(a_1..a_n, mu^m(a_{n+1}..), ..) over all basis tuples whose evaluation
/// stays below the arity cutoff.
AInftyReport verify_ainfty(const CurvedAInftyAlgebra& A);

bool verify_strict_unit(const CurvedAInftyAlgebra& A);

// -- Maurer-Cartan ----------------------------------------------------------

/// b lies in A^+ : components of positive degree have positive valuation.
bool in_a_plus(const CurvedAInftyAlgebra& A, const Element& b);

/// h lies in A^{++} : components of nonnegative degree have positive valuation.
bool in_a_plus_plus(const CurvedAInftyAlgebra& A, const Element& h);

/// Insertion sum with k+1 boundary elements and k arguments:
/// sum over stored tuples and position choices p_1 < ... < p_k of
/// mu(bs[0].., args[0], bs[1].., args[1], ..., bs[k]..).
Element multi_insert(const CurvedAInftyAlgebra& A, const std::vector<Element>& boundary,
                     const std::vector<Element>& args);

/// Deformed algebra with maps mu^n_b; throws when b is not in A^+ or the
/// stored table fails the convergence condition (arity >= 3 entries must
/// have positive valuation).
CurvedAInftyAlgebra deform(const CurvedAInftyAlgebra& A, const MCElement& b);

/// (is_solution, W~(b)): whether mu^0_b(1) is a multiple of the unit, and
/// the multiple.
std::pair<bool, novikov::Series> weak_mc_check(const CurvedAInftyAlgebra& A, const MCElement& b);

/// max_a |(mu^1_b)^2(a)| over the basis, mod q^E.
double mu1b_squared(const CurvedAInftyAlgebra& A, const MCElement& b);

/// b1 - b0 == mu^1_{b0,b1}(h)?  Throws when h is not in A^{++}.
bool gauge_verify(const CurvedAInftyAlgebra& A, const MCElement& b0, const MCElement& b1,
                  const Element& h);

/// Fixed-point construction of the gauge partner b1 of b0 along h (requires
/// val(b0), val(h) > 0 so the iteration is triangular in q-order).
MCElement gauge_partner(const CurvedAInftyAlgebra& A, const MCElement& b0, const Element& h);

/// Composite gauge datum: h02 = h01 + h12 + mu^2_{b0,b1,b2}(h01, h12).
Element gauge_compose(const CurvedAInftyAlgebra& A, const MCElement& b0, const MCElement& b1,
                      const MCElement& b2, const Element& h01, const Element& h12);

// -- cohomology -------------------------------------------------------------

/// Graded ranks of H(mu^1_b) by valuation-aware elimination over Lambda.
RankTable cohomology_rank(const CurvedAInftyAlgebra& A, const MCElement& b);

/// Cohomology of the q^0 part of mu^1 (the Morse / first page differential).
RankTable morse_page(const CurvedAInftyAlgebra& A);

}  // namespace mmpfloer::ainfty

#endif

#ifndef MMPFLOER_POTENTIAL_HPP
#define MMPFLOER_POTENTIAL_HPP

#include <mmpfloer/novikov.hpp>
#include <mmpfloer/polytope.hpp>
#include <mmpfloer/rational.hpp>

#include <complex>
#include <string>
#include <vector>

// Leading-order Landau-Ginzburg disk potentials on Lagrangian torus fibers:
// Laurent polynomials in dim torus variables with Novikov-monomial
// coefficients q^{area}.  Critical points live in (Lambda^x)^dim and are
// found at leading order, then lifted order by order.

namespace mmpfloer::potential {

struct PotentialTerm {
    Rational area;
    ZVector exponent;
    std::complex<double> coef;
};

struct LaurentPotential {
    size_t dim = 0;
    std::vector<PotentialTerm> terms;  // sorted by (area, exponent), merged
    Rational trunc = Rational(10);
};

struct CriticalPoint {
    novikov::LocalSystem y;
    novikov::Series hessian_det;
    bool nondegenerate = false;
    Rational residual_order;  // critical equations vanish mod q^residual_order
};

struct Hessian {
    std::vector<std::vector<novikov::Series>> matrix;
    novikov::Series det;
};

struct HFCertificate {
    bool granted = false;
    std::string reason;               // refusal details (offending index, residual)
    novikov::Series potential_value;  // W(y), the eigenvalue datum
    Rational residual_order;
    long rank = 0;  // 2^dim when granted
};

/// Merge duplicate (area, exponent) pairs, drop areas >= trunc; throws on
/// negative areas.
LaurentPotential make_potential(size_t dim, std::vector<PotentialTerm> terms, Rational trunc);

/// One term q^{<lambda,nu_j> - c_j} y^{nu_j} per facet.  Throws when lambda
/// is not interior.
LaurentPotential toric_potential(const polytope::Polytope& P, const QVector& lambda,
                                 const Rational& trunc);

/// Maslov index of a Blaschke-product disk: 2 sum d_j.
long blaschke_maslov(const std::vector<long>& degrees);

/// Sub-sum of terms of minimal area.  Throws on the empty potential.
LaurentPotential leading_part(const LaurentPotential& W);

/// y_i d/dy_i W (0-based variable index i < dim).
LaurentPotential log_derivative(const LaurentPotential& W, size_t i);

novikov::Series evaluate(const LaurentPotential& W, const novikov::LocalSystem& y);

/// Local model of a simple flip / blow-up transition: q^eps (y_1 + ... +
/// y_{n-1} + y_1...y_{n_plus} / (y_{n_plus+1}...y_{n-1})), n = n_plus + n_minus.
LaurentPotential exceptional_model(long n_plus, long n_minus, const Rational& eps,
                                   const Rational& trunc);

/// Expected critical-point count n_plus - n_minus of the exceptional model.
long multiplicity(long n_plus, long n_minus);

/// All unit-modulus critical points of a single-area potential.  Strategies:
/// closed form on the exceptional-model shape, exact univariate roots for
/// dim 1, multivariate Newton from a roots-of-unity seed grid otherwise.
/// Throws std::runtime_error when no strategy converges.
std::vector<CriticalPoint> critical_points_leading(const LaurentPotential& W0);

/// Entries (y_i d_i)(y_j d_j) W evaluated at y, with determinant over Lambda.
Hessian hessian_log(const LaurentPotential& W, const novikov::LocalSystem& y);

/// Order-by-order Newton iteration y <- y exp(x) killing the log-derivatives
/// mod q^E.  Requires a nondegenerate seed; throws when the residual
/// valuation fails to increase.
CriticalPoint newton_lift(const LaurentPotential& W, const CriticalPoint& y0, const Rational& E);

/// Evaluates all log-derivatives at y; grants a Floer non-triviality
/// certificate (rank 2^dim) iff every one vanishes mod q^E.
HFCertificate hf_certificate(const LaurentPotential& W, const CriticalPoint& y);

}  // namespace mmpfloer::potential

#endif

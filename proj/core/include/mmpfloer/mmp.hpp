#ifndef MMPFLOER_MMP_HPP
#define MMPFLOER_MMP_HPP

#include <mmpfloer/polytope.hpp>
#include <mmpfloer/rational.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

// Minimal-model-program runnings for the four geometry families: toric
// manifolds (shrinking moment polytopes), polygon spaces, flat SU(2)-bundle
// moduli on the n-holed sphere, and full flag varieties.

namespace mmpfloer::mmp {

enum class TransitionKind { Flip, DivisorialContraction, MoriFibration, Empty };

std::string kind_to_string(TransitionKind k);

struct ToricWitness {
    QVector point;
    std::vector<size_t> active;
};

/// Sign vector witness for a one-dimensional polygon configuration.
struct PolygonWitness {
    std::vector<int> signs;  // +-1 per edge, #plus >= #minus
    QVector plus_lengths;    // lambda_j - t over the plus indices
    QVector minus_lengths;
};

/// (eps, h) witness for a reducible flat bundle.
struct FlatWitness {
    std::vector<int> subset;  // 0/1 per marking
    Rational half_integer;    // h with sum eps_i (lambda_i - t) = h (1 - 4t)
};

struct FlagWitness {
    std::vector<size_t> merged_walls;  // indices i where lambda_i = lambda_{i+1} was hit
    std::string fiber;                 // Grassmannian fiber description
};

using Witness = std::variant<ToricWitness, PolygonWitness, FlatWitness, FlagWitness>;

struct ToricFiberReport {
    QVector point;
    bool regular = false;    // all non-active facets strictly farther than t
    bool terminal = false;   // fiber of the terminal fibration, not a flip fiber
    std::string note;
};

struct RegularLabels {
    QVector diagonals;           // mu_1..mu_{n-3}
    Rational looseness;
    bool ordering_ok = false;    // first fibration time exceeds the looseness
    Rational first_fibration_time;
};

using RegularLagrangian = std::variant<ToricFiberReport, RegularLabels>;

struct Transition {
    Rational time;
    TransitionKind kind = TransitionKind::Flip;
    std::vector<Witness> witnesses;
    std::optional<long> multiplicity;
    std::optional<RegularLagrangian> regular_lagrangian;
    std::string before_desc;
    std::string after_desc;
};

struct ToricGeometry {
    polytope::Polytope poly;
};
struct PolygonGeometry {
    QVector lengths;
};
struct FlatGeometry {
    QVector labels;  // in [0, 1/2]
};
struct FlagGeometry {
    QVector weight;  // strictly dominant
};

using Geometry = std::variant<ToricGeometry, PolygonGeometry, FlatGeometry, FlagGeometry>;

struct MmpRunning {
    std::string geometry_desc;
    std::vector<Transition> transitions;  // terminal event included as last entry
    std::string terminal;
    std::string overall_desc;
};

// -- toric backend ----------------------------------------------------------

/// Transition times with witnesses (classified for convenience); the last
/// entry is the terminal collapse.
std::vector<Transition> toric_transition_times(const polytope::Polytope& P);

/// Compare shrink(P, t -+ delta) for exact delta; throws if t is not a
/// transition time of P.
Transition classify_toric_transition(const polytope::Polytope& P, const Rational& t);

ToricFiberReport toric_regular_fiber(const polytope::Polytope& P, const Transition& tr);

// -- polygon spaces ---------------------------------------------------------

std::vector<Transition> polygon_transition_times(const QVector& lengths);

Transition classify_polygon_transition(const QVector& lengths, const Rational& t,
                                       const std::vector<int>& signs);

/// min_{i != j != k} (mu_i + mu_j - mu_k) / 2; negative iff the triangle
/// inequality fails.
Rational looseness_triangle(const Rational& m1, const Rational& m2, const Rational& m3);

/// min( min_{i != j != k} (mu_i + mu_j - mu_k), 1 - mu_1 - mu_2 - mu_3 ).
Rational looseness_pants(const Rational& m1, const Rational& m2, const Rational& m3);

enum class LoosenessMode { Triangle, Pants };

/// Equal-looseness diagonal labels for the canonical caterpillar
/// triangulation / pants decomposition; solution of maximal looseness.
std::optional<RegularLabels> regular_labels(const QVector& lengths, LoosenessMode mode);

// -- flat bundles -----------------------------------------------------------

/// Agnihotri-Woodward emptiness test over odd subsets.
bool flat_nonempty(const QVector& labels);

std::vector<Transition> flat_transition_times(const QVector& labels);

// -- flag varieties ---------------------------------------------------------

MmpRunning flag_walk(const QVector& weight);

// -- assembly ---------------------------------------------------------------

MmpRunning run_mmp(const Geometry& geometry);

}  // namespace mmpfloer::mmp

#endif

#include <doctest.h>

#include <mmpfloer/potential.hpp>

#include <random>

#ifdef MMPFLOER_HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

using namespace mmpfloer;
using namespace mmpfloer::potential;
namespace nv = mmpfloer::novikov;
using Cplx = std::complex<double>;

namespace {

const Rational T(6);

polytope::Polytope unit_square() {
    return polytope::from_facets(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                                 {rat(0), rat(0), rat(-1), rat(-1)});
}

LaurentPotential p1_potential(const Rational& a1, const Rational& a2) {
    return make_potential(1, {{a1, {1}, {1.0, 0.0}}, {a2, {-1}, {1.0, 0.0}}}, T);
}

}  // namespace

TEST_CASE("potential construction merges and validates") {
    LaurentPotential W = make_potential(
        2, {{rat(1), {1, 0}, {1.0, 0.0}}, {rat(1, 2), {0, 1}, {2.0, 0.0}},
            {rat(1), {1, 0}, {3.0, 0.0}}, {rat(7), {2, 2}, {1.0, 0.0}}},
        T);
    REQUIRE(W.terms.size() == 2);
    CHECK(W.terms[0].area == rat(1, 2));
    CHECK(W.terms[1].coef == Cplx(4.0));
    CHECK_THROWS_AS(make_potential(2, {{rat(-1), {1, 0}, {1.0, 0.0}}}, T),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_potential(2, {{rat(1), {1}, {1.0, 0.0}}}, T), std::invalid_argument);
}

TEST_CASE("toric potential of the square") {
    auto W = toric_potential(unit_square(), {rat(1, 2), rat(1, 2)}, T);
    REQUIRE(W.terms.size() == 4);
    for (const auto& t : W.terms) CHECK(t.area == rat(1, 2));

    auto off = toric_potential(unit_square(), {rat(1, 4), rat(1, 4)}, T);
    REQUIRE(off.terms.size() == 4);
    CHECK(off.terms[0].area == rat(1, 4));
    CHECK(leading_part(off).terms.size() == 2);

    CHECK_THROWS_AS(toric_potential(unit_square(), {rat(0), rat(1, 2)}, T),
                    std::invalid_argument);
}

TEST_CASE("Maslov indices of Blaschke products") {
    CHECK(blaschke_maslov({1}) == 2);
    CHECK(blaschke_maslov({1, 2, 3}) == 12);
    CHECK_THROWS_AS(blaschke_maslov({1, -1}), std::invalid_argument);
}

TEST_CASE("log derivative multiplies by the exponent") {
    auto W = make_potential(2, {{rat(1), {2, -3}, {1.0, 0.0}}, {rat(2), {0, 1}, {5.0, 0.0}}}, T);
    auto d0 = log_derivative(W, 0);
    REQUIRE(d0.terms.size() == 1);
    CHECK(d0.terms[0].coef == Cplx(2.0));
    CHECK(d0.terms[0].exponent == ZVector{2, -3});
    auto d1 = log_derivative(W, 1);
    REQUIRE(d1.terms.size() == 2);
    CHECK(d1.terms[0].coef == Cplx(-3.0));
    CHECK(d1.terms[1].coef == Cplx(5.0));
    CHECK_THROWS_AS(log_derivative(W, 2), std::invalid_argument);
}

TEST_CASE("evaluation at constant local systems") {
    auto W = p1_potential(rat(1, 2), rat(1, 2));
    auto y = nv::constant_system({{2.0, 0.0}}, T);
    auto val = evaluate(W, y);
    REQUIRE(val.terms.size() == 1);
    CHECK(val.terms[0].exp == rat(1, 2));
    CHECK(std::abs(val.terms[0].coef - Cplx(2.5)) < 1e-12);
}

TEST_CASE("sphere potential: critical points exist iff the areas agree") {
    auto balanced = leading_part(p1_potential(rat(1, 2), rat(1, 2)));
    auto crits = critical_points_leading(balanced);
    REQUIRE(crits.size() == 2);
    CHECK(std::abs(nv::leading_coef(crits[0].y.values[0]) - Cplx(-1.0)) < 1e-9);
    CHECK(std::abs(nv::leading_coef(crits[1].y.values[0]) - Cplx(1.0)) < 1e-9);
    for (const auto& c : crits) {
        CHECK(c.nondegenerate);
        auto cert = hf_certificate(p1_potential(rat(1, 2), rat(1, 2)), c);
        CHECK(cert.granted);
        CHECK(cert.rank == 2);
    }

    auto lopsided = leading_part(p1_potential(rat(1, 3), rat(1, 2)));
    CHECK(critical_points_leading(lopsided).empty());
    CHECK_THROWS_AS(critical_points_leading(p1_potential(rat(1, 3), rat(1, 2))),
                    std::invalid_argument);
}

TEST_CASE("exceptional model structure and critical count") {
    auto W = exceptional_model(2, 1, rat(1, 4), T);
    CHECK(W.dim == 2);
    REQUIRE(W.terms.size() == 3);
    for (const auto& t : W.terms) CHECK(t.area == rat(1, 4));
    CHECK(multiplicity(2, 1) == 1);

    auto crits = critical_points_leading(W);
    REQUIRE(crits.size() == 1);
    CHECK(std::abs(nv::leading_coef(crits[0].y.values[0]) - Cplx(-1.0)) < 1e-9);
    CHECK(std::abs(nv::leading_coef(crits[0].y.values[1]) - Cplx(-1.0)) < 1e-9);
    CHECK(crits[0].nondegenerate);

    CHECK(multiplicity(5, 2) == 3);
    CHECK(critical_points_leading(exceptional_model(5, 2, rat(1, 3), T)).size() == 3);
    CHECK_THROWS_AS(exceptional_model(2, 2, rat(1), T), std::invalid_argument);
    CHECK_THROWS_AS(multiplicity(1, 1), std::invalid_argument);
}

TEST_CASE("hessian examples") {
    auto W1 = make_potential(1, {{rat(1, 3), {1}, {2.0, 0.0}}}, T);
    auto H1 = hessian_log(W1, nv::constant_system({{1.0, 0.0}}, T));
    REQUIRE(H1.det.terms.size() == 1);
    CHECK(H1.det.terms[0].exp == rat(1, 3));
    CHECK(std::abs(H1.det.terms[0].coef - Cplx(2.0)) < 1e-12);

    auto Wsq = toric_potential(unit_square(), {rat(1, 2), rat(1, 2)}, T);
    auto Hsq = hessian_log(Wsq, nv::constant_system({{1.0, 0.0}, {1.0, 0.0}}, T));
    REQUIRE(!Hsq.det.is_zero());
    CHECK(Hsq.det.terms[0].exp == rat(1));
    CHECK(std::abs(Hsq.det.terms[0].coef - Cplx(4.0)) < 1e-12);
    CHECK(nv::sup_norm(Hsq.matrix[0][1]) < 1e-12);
}

TEST_CASE("newton lift: hand-checked first correction") {
    // W = q^{1/2}(y + 1/y) + q y^2: the critical point near 1 moves to
    // y = 1 - q^{1/2} + O(q)
    auto W = make_potential(
        1, {{rat(1, 2), {1}, {1.0, 0.0}}, {rat(1, 2), {-1}, {1.0, 0.0}}, {rat(1), {2}, {1.0, 0.0}}},
        T);
    auto seeds = critical_points_leading(leading_part(W));
    REQUIRE(seeds.size() == 2);
    const auto& near_one = seeds[1];
    REQUIRE(std::abs(nv::leading_coef(near_one.y.values[0]) - Cplx(1.0)) < 1e-9);
    auto lifted = newton_lift(W, near_one, rat(3));
    const auto& ys = lifted.y.values[0];
    REQUIRE(ys.terms.size() >= 2);
    CHECK(ys.terms[1].exp == rat(1, 2));
    CHECK(std::abs(ys.terms[1].coef - Cplx(-1.0)) < 1e-9);
    for (size_t i = 0; i < W.dim; ++i) {
        auto resid = evaluate(log_derivative(W, i), lifted.y);
        CHECK(resid.is_zero());
    }
}

TEST_CASE("newton lift kills all derivatives mod q^E on random perturbations") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> offs(1, 3);
    // keep perturbations mild: large coefficients or a fine exponent grid make
    // the lifted series coefficients grow geometrically, which drowns the
    // residual check in double-precision roundoff
    std::uniform_real_distribution<double> coef(-0.2, 0.2);
    std::uniform_int_distribution<long> expo(-1, 1);
    const long combos[3][2] = {{2, 1}, {3, 1}, {3, 2}};
    int done = 0;
    while (done < 25) {
        long np = combos[done % 3][0], nm = combos[done % 3][1];
        auto W0 = exceptional_model(np, nm, rat(1, 2), T);
        auto W = W0;
        for (int k = 0; k < 3; ++k) {
            ZVector e(W.dim);
            for (auto& x : e) x = expo(rng);
            W.terms.push_back({rat(1, 2) + Rational(offs(rng), 4), e, {coef(rng), coef(rng)}});
        }
        W = make_potential(W.dim, W.terms, T);
        auto seeds = critical_points_leading(W0);
        REQUIRE(seeds.size() == size_t(np - nm));
        std::vector<CriticalPoint> lifts;
        for (const auto& s : seeds) lifts.push_back(newton_lift(W, s, rat(4)));
        for (const auto& l : lifts) {
            for (size_t i = 0; i < W.dim; ++i) {
                auto resid = nv::truncate(evaluate(log_derivative(W, i), l.y), rat(4));
                CHECK(nv::sup_norm(resid) < 1e-8);
            }
            auto cert = hf_certificate(W, l);
            CHECK(cert.granted);
            CHECK(cert.rank == (1L << W.dim));
            CHECK(nv::valuation(cert.potential_value).value() == rat(1, 2));
        }
        // distinct seeds stay distinct after lifting
        for (size_t a = 0; a < lifts.size(); ++a)
            for (size_t b = a + 1; b < lifts.size(); ++b) {
                double gap = 0.0;
                for (size_t i = 0; i < W.dim; ++i)
                    gap = std::max(gap, nv::sup_norm(nv::sub(lifts[a].y.values[i],
                                                             lifts[b].y.values[i])));
                CHECK(gap > 1e-3);
            }
        ++done;
    }
}

TEST_CASE("certificates are refused at non-critical points") {
    auto W = p1_potential(rat(1, 2), rat(1, 2));
    CriticalPoint bogus;
    bogus.y = nv::constant_system({{2.0, 0.0}}, T);
    bogus.nondegenerate = true;
    auto cert = hf_certificate(W, bogus);
    CHECK_FALSE(cert.granted);
    CHECK(cert.rank == 0);
    CHECK(cert.reason.find("derivative 0") != std::string::npos);
}

#ifdef MMPFLOER_HAVE_EIGEN
TEST_CASE("univariate critical points agree with companion-matrix eigenvalues") {
    std::mt19937 rng(654);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        // single-area Laurent potential in one variable, exponents -2..2
        std::vector<PotentialTerm> terms;
        for (long e = -2; e <= 2; ++e)
            terms.push_back({rat(1, 2), {e}, {coef(rng), coef(rng)}});
        auto W = make_potential(1, terms, T);
        std::vector<CriticalPoint> crits;
        try {
            crits = critical_points_leading(W);
        } catch (const std::runtime_error&) {
            continue;  // no convergent strategy; nothing to compare
        }
        // derivative polynomial sum_e e c_e y^{e+2}
        std::vector<Cplx> poly(5, Cplx(0.0));
        for (const auto& t : W.terms) poly[size_t(t.exponent[0] + 2)] = double(t.exponent[0]) * t.coef;
        while (!poly.empty() && std::abs(poly.back()) < 1e-14) poly.pop_back();
        size_t lead = 0;
        while (lead < poly.size() && std::abs(poly[lead]) < 1e-14) ++lead;
        std::vector<Cplx> reduced(poly.begin() + long(lead), poly.end());
        std::vector<Cplx> expect;
        if (reduced.size() > 1) {
            size_t d = reduced.size() - 1;
            Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(long(d), long(d));
            for (size_t i = 0; i + 1 < d; ++i) C(long(i) + 1, long(i)) = 1.0;
            for (size_t i = 0; i < d; ++i) C(long(i), long(d) - 1) = -reduced[i] / reduced[d];
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
            for (long i = 0; i < es.eigenvalues().size(); ++i) {
                Cplx z = es.eigenvalues()[i];
                if (std::abs(std::abs(z) - 1.0) <= 1e-6) expect.push_back(z);
            }
        }
        std::sort(expect.begin(), expect.end(), [](Cplx a, Cplx b) {
            if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        REQUIRE(crits.size() == expect.size());
        for (size_t i = 0; i < expect.size(); ++i)
            CHECK(std::abs(nv::leading_coef(crits[i].y.values[0]) - expect[i]) < 1e-6);
    }
}
#endif

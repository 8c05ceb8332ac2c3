#include "support.hpp"

#include "sullivan/cohomology.hpp"
#include "sullivan/family.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace sullivan;

namespace {

// Diagonal self-map of the n=1 family up to degree 55 with free x-scalars;
// the scalars of y1, y2, y3, w are then forced by commutation.
CochainMorphism<Rational> n1_diagonal_cap55(const FamilyInstance& f, Rational p1, Rational p2,
                                            Rational p3) {
    std::vector<Rational> s{p1,
                            p2,
                            p3,
                            p2 * p2 * p2 * p3,
                            p2 * p2 * p3 * p3,
                            p2 * p3 * p3 * p3,
                            rational_pow(p1, 28),
                            Rational(1)};
    auto m = diagonal_morphism<Rational>(f.algebra, s);
    return validate_morphism(restrict(m, 55));
}

Rational qpow(Rational b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

TEST_CASE("differential matrix at the n=2 staging degree is injective") {
    FamilyInstance f = build_family(2);
    DegreeBasis dom = enumerate_basis(*f.algebra, 43, 42);
    DegreeBasis cod = enumerate_basis(*f.algebra, 44, 42);
    RationalMatrix m = differential_matrix(*f.algebra, 43, 42);
    REQUIRE(m.cols() == 2);
    REQUIRE(m.rows() == cod.dimension());
    CHECK(rref(m).rank == 2);

    // images are x3^3*x4*x1^3 and x3^3*x4*x1*x2
    const auto& t = f.algebra->table();
    for (int j = 0; j < 2; ++j) {
        Element<Rational> img = extend_derivation(
            *f.algebra, Element<Rational>::monomial(t, dom.monomials[j]));
        REQUIRE(img.term_count() == 1);
        auto& [mono, c] = *img.terms().begin();
        CHECK(c == Rational(1));
        CHECK(mono.exponent_of(t.index_of("x3")) == 3);
        CHECK(mono.exponent_of(t.index_of("x4")) == 1);
    }
}

TEST_CASE("empty domain gives a matrix with zero columns") {
    FamilyInstance f = build_family(1);
    RationalMatrix m = differential_matrix(*f.algebra, 17, 16);
    CHECK(m.cols() == 0);
    CHECK(m.rows() == static_cast<int>(hilbert_count(*f.algebra, 18, 16)));
}

TEST_CASE("boundary matrix of degree 19 cap 18 has rank one") {
    FamilyInstance f = build_family(1);
    RationalMatrix m = differential_matrix(*f.algebra, 19, 18);
    REQUIRE(m.cols() == 1); // basis {y1*x1}
    CHECK(rref(m).rank == 1);
}

TEST_CASE("top-degree matrix dimensions agree with the counting oracle") {
    FamilyInstance f = build_family(1);
    RationalMatrix m = differential_matrix(*f.algebra, 71, 70);
    CHECK(m.cols() == static_cast<int>(hilbert_count(*f.algebra, 71, 70)));
    CHECK(m.rows() == static_cast<int>(hilbert_count(*f.algebra, 72, 70)));
}

TEST_CASE("image sits inside the kernel degree by degree") {
    FamilyInstance f = build_family(1);
    for (long d : {18L, 19L, 20L, 36L, 54L, 55L, 70L, 71L}) {
        RationalMatrix a = differential_matrix(*f.algebra, d, 70);
        RationalMatrix b = differential_matrix(*f.algebra, d + 1, 70);
        RationalMatrix comp = b * a;
        CHECK(comp.nonzero_count() == 0);
    }
}

TEST_CASE("cohomology at the two claimed-acyclic degrees of n=1") {
    // The recorded claim is dim H = 0 at both degrees; the exact computation
    // contradicts it.  These dimensions are frozen from the verified
    // counterexample analysis (see the non-bounding cocycle test below).
    FamilyInstance f = build_family(1);
    CohomologySpace top = cohomology(*f.algebra, 71, 70);
    CHECK(top.h_dim() == 43);
    CHECK(top.cocycle_dim() - top.coboundary_dim() == 43);

    CohomologySpace wdeg = cohomology(*f.algebra, 55, 54);
    CHECK(wdeg.h_dim() == 30);
    CHECK(wdeg.cocycle_dim() > 0);

    CohomologySpace low = cohomology(*f.algebra, 1, 70);
    CHECK(low.h_dim() == 0);
}

TEST_CASE("explicit non-bounding cocycles falsify the acyclicity claim") {
    FamilyInstance f = build_family(1);
    const SullivanAlgebra& a = *f.algebra;

    // v = y1 x1^24 x3 - y2 x1^24 x2: a cocycle whose y3-partner would need a
    // negative exponent.  No coboundary has a y1-component free of x2, so v
    // cannot bound.
    Element<Rational> v =
        sub(mul(a.generator("y1"), mul(pow(a.generator("x1"), 24), a.generator("x3"))),
            mul(a.generator("y2"), mul(pow(a.generator("x1"), 24), a.generator("x2"))));
    REQUIRE(v.homogeneous_degree() == 71);
    CHECK(extend_derivation(a, v).is_zero());
    DegreeBasis b71 = enumerate_basis(a, 71, 70);
    RrefSolver top_solver(differential_matrix(a, 70, 70));
    CHECK(!top_solver.solve(coordinates(v, b71)).has_value());

    // same shape one stage down, in degree 55
    Element<Rational> v2 =
        sub(mul(a.generator("y1"), mul(pow(a.generator("x1"), 16), a.generator("x3"))),
            mul(a.generator("y2"), mul(pow(a.generator("x1"), 16), a.generator("x2"))));
    REQUIRE(v2.homogeneous_degree() == 55);
    CHECK(extend_derivation(a, v2).is_zero());
    DegreeBasis b55 = enumerate_basis(a, 55, 54);
    RrefSolver w_solver(differential_matrix(a, 54, 54));
    CHECK(!w_solver.solve(coordinates(v2, b55)).has_value());
}

TEST_CASE("cocycles with interior exponents do bound, with exact preimages") {
    FamilyInstance f = build_family(1);
    const SullivanAlgebra& a = *f.algebra;

    // v3 = y1 x1^8 x2 x3^3 - y3 x1^8 x2^3 x3 = d(-y1 y3 x1^8)
    Element<Rational> v3 = sub(
        mul(a.generator("y1"),
            mul(pow(a.generator("x1"), 8), mul(a.generator("x2"), pow(a.generator("x3"), 3)))),
        mul(a.generator("y3"),
            mul(pow(a.generator("x1"), 8), mul(pow(a.generator("x2"), 3), a.generator("x3")))));
    REQUIRE(v3.homogeneous_degree() == 55);
    CHECK(extend_derivation(a, v3).is_zero());

    RationalMatrix d_in = differential_matrix(a, 54, 54);
    RrefSolver solver(d_in);
    DegreeBasis b55 = enumerate_basis(a, 55, 54);
    auto pre = solver.solve(coordinates(v3, b55));
    REQUIRE(pre.has_value());
    CHECK(d_in.apply(*pre) == coordinates(v3, b55));

    // every cocycle that the solver certifies bounding re-checks exactly;
    // the class representatives never bound
    CohomologySpace h = cohomology(a, 55, 54);
    int bounding = 0;
    for (auto& cocycle : h.cocycles) {
        auto p = solver.solve(cocycle);
        if (p) {
            CHECK(d_in.apply(*p) == cocycle);
            ++bounding;
        }
    }
    CHECK(bounding >= h.coboundary_dim() - h.h_dim());
    for (auto& rep : h.representatives) CHECK(!solver.solve(rep).has_value());
}

TEST_CASE("induced map scales a surviving class by the product of squares") {
    FamilyInstance f = build_family(1);
    CohomologySpace h = cohomology(*f.algebra, 20, 18);
    REQUIRE(h.h_dim() > 0);

    CochainMorphism<Rational> alpha = n1_diagonal_cap55(f, Rational(2), Rational(3), Rational(5));
    RationalMatrix m = induced_map_on_h(restrict(alpha, 18), 20, 18, h, h);

    Element<Rational> x2sq_x3sq = mul(pow(f.algebra->generator("x2"), 2),
                                      pow(f.algebra->generator("x3"), 2));
    auto coords = h.class_coordinates(coordinates(x2sq_x3sq, h.basis));
    REQUIRE(coords.has_value());

    std::vector<Rational> mapped(h.h_dim(), Rational(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) mapped[i] += m.get(i, j) * (*coords)[j];

    // [x2^2 x3^2] -> p2^2 p3^2 [x2^2 x3^2] = 9 * 25 * class
    std::vector<Rational> expect = *coords;
    for (auto& v : expect) v *= Rational(225);
    CHECK(mapped == expect);
}

TEST_CASE("identity induces the identity on cohomology") {
    FamilyInstance f = build_family(1);
    CohomologySpace h = cohomology(*f.algebra, 20, 18);
    auto id = restrict(identity_morphism<Rational>(f.algebra), 18);
    RationalMatrix m = induced_map_on_h(id, 20, 18, h, h);
    CHECK(m == RationalMatrix::identity(h.h_dim()));
}

TEST_CASE("induced maps are functorial") {
    FamilyInstance f = build_family(1);
    CohomologySpace h = cohomology(*f.algebra, 20, 18);
    auto a = n1_diagonal_cap55(f, Rational(2), Rational(3), Rational(5));
    auto b = n1_diagonal_cap55(f, Rational(1, 2), Rational(-1), Rational(7));
    RationalMatrix ma = induced_map_on_h(restrict(a, 18), 20, 18, h, h);
    RationalMatrix mb = induced_map_on_h(restrict(b, 18), 20, 18, h, h);
    RationalMatrix mab = induced_map_on_h(restrict(compose(a, b), 18), 20, 18, h, h);
    CHECK(mab == ma * mb);
}

TEST_CASE("obstruction map columns are the classes of the differentials") {
    FamilyInstance f = build_family(1);

    ObstructionMap b_y2 = obstruction_b(*f.algebra, 19); // stage of y2
    REQUIRE(b_y2.generators == std::vector<GenIndex>{f.gen_y2()});
    auto cls = b_y2.h.class_coordinates(
        coordinates(f.algebra->diff(f.gen_y2()), b_y2.h.basis));
    REQUIRE(cls.has_value());
    bool nonzero = false;
    for (int i = 0; i < b_y2.h.h_dim(); ++i) {
        CHECK(b_y2.matrix.get(i, 0) == (*cls)[i]);
        nonzero = nonzero || !is_zero((*cls)[i]);
    }
    CHECK(nonzero); // the class of x2^2 x3^2 survives

    ObstructionMap b_w = obstruction_b(*f.algebra, 55);
    REQUIRE(b_w.generators == std::vector<GenIndex>{f.gen_w()});
    auto wcls = b_w.h.class_coordinates(coordinates(f.algebra->diff(f.gen_w()), b_w.h.basis));
    REQUIRE(wcls.has_value());
    nonzero = false;
    for (auto& v : *wcls) nonzero = nonzero || !is_zero(v);
    CHECK(nonzero);

    // closed generator: zero column (the ambient obstruction space is empty here)
    ObstructionMap b_x2 = obstruction_b(*f.algebra, 4);
    REQUIRE(b_x2.generators.size() == 1);
    CHECK(b_x2.matrix.nonzero_count() == 0);
}

TEST_CASE("naturality of the obstruction maps") {
    FamilyInstance f = build_family(1);

    auto id = identity_morphism<Rational>(f.algebra);
    for (int stage : {17, 19, 21, 55, 71}) CHECK(check_naturality(id, stage));

    std::mt19937 rng(5150);
    for (int i = 0; i < 4; ++i) {
        Rational p1(static_cast<long>(1 + rng() % 5)), p2(static_cast<long>(1 + rng() % 5)),
            p3(static_cast<long>(1 + rng() % 5));
        CochainMorphism<Rational> alpha = n1_diagonal_cap55(f, p1, p2, p3);
        // self-map of the capped morphism: stages below its cap
        for (int stage : {17, 19, 21, 55}) CHECK(check_naturality(alpha, stage));
    }

    // the two full diagonal sign morphisms reach the top stage
    std::vector<Rational> flip{Rational(-1), Rational(-1), Rational(-1), Rational(1),
                               Rational(1),  Rational(1),  Rational(1),  Rational(1)};
    auto neg = validate_morphism(diagonal_morphism<Rational>(f.algebra, flip));
    for (int stage : {17, 19, 21, 55, 71}) CHECK(check_naturality(neg, stage));

    // a corrupted map that skips differential-commutation fails
    auto bad = diagonal_morphism<Rational>(
        f.algebra, std::vector<Rational>{Rational(1), Rational(1), Rational(1), Rational(2),
                                         Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK(!check_naturality(bad, 17));
}

TEST_CASE("b map respects scaling: p2^a p3^b on the y stages") {
    // frozen: for alpha = n1_diagonal(p1,p2,p3), the induced map on the
    // 1-dim class [d y1] multiplies by p2^3 p3
    FamilyInstance f = build_family(1);
    ObstructionMap b = obstruction_b(*f.algebra, 17);
    auto alpha = restrict(n1_diagonal_cap55(f, Rational(2), Rational(3), Rational(5)), 16);
    RationalMatrix hmat = induced_map_on_h(alpha, 18, 16, b.h, b.h);
    auto base = b.h.class_coordinates(coordinates(f.algebra->diff(f.gen_y1()), b.h.basis));
    REQUIRE(base.has_value());
    std::vector<Rational> mapped(b.h.h_dim(), Rational(0));
    for (int i = 0; i < hmat.rows(); ++i)
        for (int j = 0; j < hmat.cols(); ++j) mapped[i] += hmat.get(i, j) * (*base)[j];
    std::vector<Rational> expect = *base;
    for (auto& v : expect) v *= qpow(Rational(3), 3) * Rational(5);
    CHECK(mapped == expect);
}

#include "support.hpp"

#include "sullivan/family.hpp"
#include "sullivan/homotopy.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace sullivan;
using testsupport::word;

TEST_CASE("family differentials evaluate as declared") {
    FamilyInstance f = build_family(1);
    const SullivanAlgebra& a = *f.algebra;

    Element<Rational> dy1 = extend_derivation(a, a.generator("y1"));
    CHECK(dy1 == mul(pow(a.generator("x2"), 3), a.generator("x3")));

    // Leibniz with |y1| odd
    Element<Rational> prod = mul(a.generator("y1"), a.generator("y2"));
    Element<Rational> expect = sub(mul(dy1, a.generator("y2")),
                                   mul(a.generator("y1"), extend_derivation(a, a.generator("y2"))));
    CHECK(extend_derivation(a, prod) == expect);

    CHECK(extend_derivation(a, pow(a.generator("x1"), 28)).is_zero());
}

TEST_CASE("d squared vanishes on generators of family instances") {
    for (int n : {1, 2}) {
        FamilyInstance f = build_family(n);
        CHECK(check_d_squared(*f.algebra).ok());
        CHECK(check_minimal_1connected(*f.algebra).ok());
    }
}

TEST_CASE("d squared failure is localized") {
    // d(u) = y1*x1 with d(y1) = x1^2 gives d(d(u)) = x1^3 != 0
    std::vector<GeneratorDecl> decls{{"x1", 2, 0}, {"y1", 3, 1}, {"u", 4, 2}};
    GeneratorTable staging(decls);
    std::vector<Element<Rational>> diffs;
    diffs.push_back(Element<Rational>(&staging));
    diffs.push_back(normalize<Rational>(staging, {{0, 2}}, Rational(1)));
    diffs.push_back(normalize<Rational>(staging, {{1, 1}, {0, 1}}, Rational(1)));
    SullivanAlgebra a("broken", decls, diffs);
    GeneratorCheckReport r = check_d_squared(a);
    REQUIRE(r.failures.size() == 1);
    CHECK(a.table().name(r.failures[0].generator) == "u");
}

TEST_CASE("minimality and connectivity failures") {
    // a degree-1 generator builds but fails the 1-connectedness check
    {
        std::vector<GeneratorDecl> decls{{"t", 1, 0}};
        GeneratorTable staging(decls);
        SullivanAlgebra a("circle", decls, {Element<Rational>(&staging)});
        GeneratorCheckReport r = check_minimal_1connected(a);
        REQUIRE(r.failures.size() == 1);
    }

    // a linear differential d(u) = 2v fails minimality
    {
        std::vector<GeneratorDecl> decls{{"u", 3, 0}, {"v", 4, 1}};
        GeneratorTable staging(decls);
        std::vector<Element<Rational>> diffs;
        diffs.push_back(Element<Rational>::generator(staging, 1, Rational(2)));
        diffs.push_back(Element<Rational>(&staging));
        SullivanAlgebra a("linear", decls, diffs);
        GeneratorCheckReport r = check_minimal_1connected(a);
        REQUIRE(r.failures.size() == 1);
        CHECK(a.table().name(r.failures[0].generator) == "u");
    }
}

TEST_CASE("Leibniz rule on random pairs of basis monomials") {
    std::mt19937 rng(2468);
    FamilyInstance fam = build_family(1);
    int cases = 0;
    for (int i = 0; i < 600; ++i) {
        std::shared_ptr<SullivanAlgebra> hold;
        if (i % 3 == 2) hold = testsupport::random_algebra(rng);
        const SullivanAlgebra& a = hold ? *hold : *fam.algebra;
        Monomial m1 = testsupport::random_monomial(rng, a, 24);
        Monomial m2 = testsupport::random_monomial(rng, a, 24);
        Element<Rational> e1 = Element<Rational>::monomial(a.table(), m1);
        Element<Rational> e2 = Element<Rational>::monomial(a.table(), m2);
        Element<Rational> lhs = extend_derivation(a, mul(e1, e2));
        Element<Rational> rhs = add(mul(extend_derivation(a, e1), e2),
                                    scale(Rational(m1.degree() % 2 ? -1 : 1),
                                          mul(e1, extend_derivation(a, e2))));
        CHECK(lhs == rhs);
        ++cases;
        if (lhs == rhs) continue;
        WARN("failing pair: " << e1.to_string() << " | " << e2.to_string());
        break;
    }
    REQUIRE(cases >= 500);
}

TEST_CASE("derivation extension squares to zero on random decomposables") {
    std::mt19937 rng(1357);
    for (int n : {1, 2}) {
        FamilyInstance f = build_family(n);
        for (int i = 0; i < 100; ++i) {
            Element<Rational> e = testsupport::random_element(rng, *f.algebra, 3, 80);
            CHECK(extend_derivation(*f.algebra, extend_derivation(*f.algebra, e)).is_zero());
        }
    }
}

TEST_CASE("cylinder differential squares to zero") {
    std::mt19937 rng(8642);
    FamilyInstance f = build_family(1);
    for (int i = 0; i < 50; ++i) {
        CylinderElement c(&f.algebra->table());
        c.add_t(0, testsupport::random_element(rng, *f.algebra, 2, 40));
        c.add_t(1, testsupport::random_element(rng, *f.algebra, 2, 40));
        c.add_t(2, testsupport::random_element(rng, *f.algebra, 1, 40));
        c.add_dt(0, testsupport::random_element(rng, *f.algebra, 2, 40));
        c.add_dt(1, testsupport::random_element(rng, *f.algebra, 1, 40));
        CHECK(cylinder_differential(*f.algebra, cylinder_differential(*f.algebra, c)).is_zero());
    }
}

TEST_CASE("homotopy witness for reconciled morphisms") {
    FamilyInstance f = build_family(1);
    auto a = f.algebra;
    const int wdeg = f.degrees.w; // 55

    // diagonal identity up to w; the perturbed copy adds an exact term on w
    CochainMorphism<Rational> diag = restrict(identity_morphism<Rational>(a), wdeg);
    CochainMorphism<Rational> pert = diag;
    Element<Rational> corr = word(*f.algebra, {"y1", "y3", "x1", "x1", "x1", "x1", "x1", "x1",
                                               "x1", "x1"}); // y1 y3 x1^8, degree 54
    REQUIRE(corr.homogeneous_degree() == 54);
    pert.images[f.gen_w()] =
        add(pert.images[f.gen_w()], extend_derivation(*a, corr));
    pert = validate_morphism(std::move(pert));
    diag = validate_morphism(std::move(diag));

    std::map<GenIndex, Element<Rational>> corrections{{f.gen_w(), corr}};
    HomotopyWitness w = homotopy_witness(pert, diag, corrections);
    CHECK(witness_is_cochain(w));
    CHECK(evaluate_witness(w, 0) == diag);
    CHECK(evaluate_witness(w, 1) == pert);

    // all-zero corrections: constant witness, both endpoints identical
    HomotopyWitness cw = homotopy_witness(diag, diag, {});
    CHECK(witness_is_cochain(cw));
    CHECK(evaluate_witness(cw, 0) == evaluate_witness(cw, 1));

    // mismatched correction is rejected
    CHECK_THROWS_AS(homotopy_witness(diag, diag, corrections), std::invalid_argument);
}

TEST_CASE("flipping the dt sign breaks the cochain property") {
    FamilyInstance f = build_family(1);
    auto a = f.algebra;
    const int wdeg = f.degrees.w;

    CochainMorphism<Rational> diag = restrict(identity_morphism<Rational>(a), wdeg);
    Element<Rational> corr = testsupport::word(*f.algebra, {"y1", "y3"});
    corr = mul(corr, pow(a->generator("x1"), 8));
    CochainMorphism<Rational> pert = diag;
    pert.images[f.gen_w()] = add(pert.images[f.gen_w()], extend_derivation(*a, corr));

    HomotopyWitness w = homotopy_witness(pert, diag, {{f.gen_w(), corr}});
    REQUIRE(witness_is_cochain(w));
    CylinderElement& img = w.images.at(f.gen_w());
    img.dt_part[0] = negate(img.dt_part[0]);
    CHECK(!witness_is_cochain(w));
}

TEST_CASE("stage homotopy detection finds corrections") {
    FamilyInstance f = build_family(1);
    auto a = f.algebra;
    const int wdeg = f.degrees.w;

    CochainMorphism<Rational> diag = validate_morphism(restrict(identity_morphism<Rational>(a), wdeg));
    Element<Rational> corr = mul(testsupport::word(*f.algebra, {"y1", "y3"}),
                                 pow(a->generator("x1"), 8));
    CochainMorphism<Rational> pert = diag;
    pert.images[f.gen_w()] = add(pert.images[f.gen_w()], extend_derivation(*a, corr));
    pert = validate_morphism(std::move(pert));

    StageHomotopyResult res = homotopic_at_stage(pert, diag, wdeg - 1);
    REQUIRE(res.homotopic);
    const Element<Rational>& y = res.corrections.at(f.gen_w());
    CHECK(extend_derivation(*a, y) == sub(pert.image(f.gen_w()), diag.image(f.gen_w())));

    StageHomotopyResult trivial = homotopic_at_stage(diag, diag, wdeg - 1);
    REQUIRE(trivial.homotopic);
    CHECK(extend_derivation(*a, trivial.corrections.at(f.gen_w())).is_zero());
}

#include "support.hpp"

#include "sullivan/family.hpp"
#include "sullivan/homotopy.hpp"
#include "sullivan/morphism.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace sullivan;

namespace {

CochainMorphism<Rational> n1_diagonal_cap(const FamilyInstance& f, int cap, Rational p1,
                                          Rational p2, Rational p3) {
    std::vector<Rational> s{p1,
                            p2,
                            p3,
                            p2 * p2 * p2 * p3,
                            p2 * p2 * p3 * p3,
                            p2 * p3 * p3 * p3,
                            rational_pow(p1, 28),
                            Rational(1)};
    return validate_morphism(restrict(diagonal_morphism<Rational>(f.algebra, s), cap));
}

} // namespace

TEST_CASE("identity and forced sign morphisms validate") {
    FamilyInstance f = build_family(1);
    CHECK(validate_morphism(identity_morphism<Rational>(f.algebra)).validated);

    // all x-scalars -1 forces every other scalar to +1
    std::vector<Rational> s{Rational(-1), Rational(-1), Rational(-1), Rational(1),
                            Rational(1),  Rational(1),  Rational(1),  Rational(1)};
    auto neg = validate_morphism(diagonal_morphism<Rational>(f.algebra, s));
    CHECK(neg.validated);
    CHECK(is_equivalence(neg));
}

TEST_CASE("commutation failure reports the offending generator and residual") {
    FamilyInstance f = build_family(1);
    // restricted below z so only y1 itself can fail (d z also involves y1)
    auto bad = restrict(identity_morphism<Rational>(f.algebra), 55);
    bad.validated = false;
    bad.images[f.gen_y1()] = scale(Rational(2), f.algebra->generator("y1"));

    ValidationReport<Rational> r = morphism_residuals(bad);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].generator == f.gen_y1());
    // residual f(d y1) - d(f y1) = x2^3 x3 - 2 x2^3 x3 = -x2^3 x3
    Element<Rational> expected = negate(mul(pow(f.algebra->generator("x2"), 3),
                                            f.algebra->generator("x3")));
    CHECK(r.failures[0].residual == expected);
    CHECK_THROWS_AS(validate_morphism(bad), std::invalid_argument);
}

TEST_CASE("composition multiplies diagonal scalars and respects linear parts") {
    FamilyInstance f = build_family(1);
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
        Rational a1(static_cast<long>(1 + rng() % 6)), a2(static_cast<long>(1 + rng() % 6)),
            a3(static_cast<long>(1 + rng() % 6));
        Rational b1(static_cast<long>(1 + rng() % 6)), b2(static_cast<long>(1 + rng() % 6)),
            b3(static_cast<long>(1 + rng() % 6));
        auto fa = n1_diagonal_cap(f, 55, a1, a2, a3);
        auto fb = n1_diagonal_cap(f, 55, b1, b2, b3);
        auto fc = compose(fa, fb);
        CHECK(fc.image(0) == scale(a1 * b1, f.algebra->generator("x1")));
        CHECK(fc.image(f.gen_w()) == scale(rational_pow(a1, 28) * rational_pow(b1, 28), f.algebra->generator("w")));

        LinearPart<Rational> la = linear_part(fa), lb = linear_part(fb), lc = linear_part(fc);
        for (auto& [deg, block] : lc.blocks) {
            REQUIRE(block.size() == 1);
            CHECK(block[0][0] == la.blocks.at(deg)[0][0] * lb.blocks.at(deg)[0][0]);
        }
    }
}

TEST_CASE("restriction keeps only generators within the cap") {
    FamilyInstance f = build_family(1);
    auto r = restrict(identity_morphism<Rational>(f.algebra), 6);
    CHECK(r.images.size() == 3); // x1, x2, x3
    CHECK(r.cap == 6);
    for (auto& [g, img] : r.images) CHECK(f.algebra->table().degree(g) <= 6);
    CHECK_THROWS_AS(apply_morphism(r, f.algebra->generator("y1")), std::invalid_argument);
}

TEST_CASE("linear part reads off single-generator coefficients only") {
    FamilyInstance f = build_family(1);
    auto alpha = restrict(identity_morphism<Rational>(f.algebra), 6);
    // alpha(x2) = 5 x2 + 7 x1^2: the quadratic term is not linear part
    alpha.images[1] = add(scale(Rational(5), f.algebra->generator("x2")),
                          scale(Rational(7), pow(f.algebra->generator("x1"), 2)));
    alpha = validate_morphism(std::move(alpha));
    LinearPart<Rational> lp = linear_part(alpha);
    CHECK(lp.blocks.at(4)[0][0] == Rational(5));
    CHECK(lp.blocks.at(2)[0][0] == Rational(1));

    // zero image gives a zero column
    auto z = restrict(identity_morphism<Rational>(f.algebra), 6);
    z.images[1] = f.algebra->zero();
    LinearPart<Rational> lpz = linear_part(z);
    CHECK(lpz.blocks.at(4)[0][0] == Rational(0));
}

TEST_CASE("equivalence detection") {
    FamilyInstance f = build_family(1);
    CHECK(is_equivalence(identity_morphism<Rational>(f.algebra)));
    CHECK(is_equivalence(n1_diagonal_cap(f, 55, Rational(2), Rational(-3), Rational(1, 5))));

    auto degenerate = restrict(identity_morphism<Rational>(f.algebra), 6);
    degenerate.images[0] = f.algebra->zero();
    degenerate = validate_morphism(std::move(degenerate));
    CHECK(!is_equivalence(degenerate));
}

TEST_CASE("symbolic morphisms collect residuals instead of failing") {
    FamilyInstance f = build_family(1);
    auto params = std::make_shared<ParameterTable>();
    ParamIndex p1 = params->add("p1", ParamClass::Invertible);
    ParamIndex p2 = params->add("p2", ParamClass::Invertible);
    ParamIndex p3 = params->add("p3", ParamClass::Invertible);
    ParamIndex py1 = params->add("p_y1", ParamClass::Invertible);

    CochainMorphism<ParamPoly> alpha;
    alpha.source = alpha.target = f.algebra;
    alpha.cap = 17;
    alpha.images.emplace(0, Element<ParamPoly>::generator(f.algebra->table(), 0,
                                                          ParamPoly::variable(p1)));
    alpha.images.emplace(1, Element<ParamPoly>::generator(f.algebra->table(), 1,
                                                          ParamPoly::variable(p2)));
    alpha.images.emplace(2, Element<ParamPoly>::generator(f.algebra->table(), 2,
                                                          ParamPoly::variable(p3)));
    alpha.images.emplace(f.gen_y1(), Element<ParamPoly>::generator(f.algebra->table(), f.gen_y1(),
                                                                   ParamPoly::variable(py1)));

    ValidationReport<ParamPoly> r = morphism_residuals(alpha);
    REQUIRE(r.messages.empty());
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].generator == f.gen_y1());
    // residual = (p2^3 p3 - p_y1) x2^3 x3
    ParamPoly expect = ParamPoly::variable(p2) * ParamPoly::variable(p2) *
                           ParamPoly::variable(p2) * ParamPoly::variable(p3) -
                       ParamPoly::variable(py1);
    REQUIRE(r.failures[0].residual.term_count() == 1);
    CHECK(r.failures[0].residual.terms().begin()->second == expect);
}

TEST_CASE("homotopic maps share their linear part") {
    FamilyInstance f = build_family(1);
    auto diag = validate_morphism(restrict(identity_morphism<Rational>(f.algebra), 55));
    auto pert = diag;
    Element<Rational> corr = mul(testsupport::word(*f.algebra, {"y1", "y3"}),
                                 pow(f.algebra->generator("x1"), 8));
    pert.images[f.gen_w()] = add(pert.images[f.gen_w()], extend_derivation(*f.algebra, corr));
    pert = validate_morphism(std::move(pert));

    StageHomotopyResult res = homotopic_at_stage(pert, diag, 54);
    REQUIRE(res.homotopic);
    LinearPart<Rational> lp = linear_part(pert), ld = linear_part(diag);
    CHECK(lp.blocks == ld.blocks);

    // differing below the stage violates the precondition
    auto off = diag;
    off.images[0] = scale(Rational(2), f.algebra->generator("x1"));
    CHECK_THROWS_AS(homotopic_at_stage(off, diag, 54), std::invalid_argument);
}

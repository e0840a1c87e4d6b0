#include <doctest.h>

#include "fexlab/builders.hpp"

#include <cmath>

using namespace fexlab;

namespace {
Scalar q(long long p, long long d) { return Scalar::rational(p, d); }
}

TEST_CASE("beta map cells, integer and fractional slope") {
    auto F = build(PimSpec::beta_map(q(2, 1)));
    CHECK(F->digits_up_to(100) == std::vector<Digit>{0, 1});
    auto G = build(PimSpec::beta_map(q(5, 2)));
    CHECK(G->digits_up_to(100) == std::vector<Digit>{0, 1, 2});
    CHECK(G->branch(2)->domain.str() == "[4/5, 1)");
    CHECK(G->branch(2)->image.str() == "[0, 1/2)");
    CHECK_THROWS_AS(build(PimSpec::beta_map(q(1, 1))), SpecError);
}

TEST_CASE("alpha-beta map covers [0,1) with shifted digits") {
    auto F = build(PimSpec::alpha_beta(q(1, 2), q(2, 1)));  // F = 2x + 1/2 mod 1
    CHECK(F->digits_up_to(100) == std::vector<Digit>{0, 1, 2});
    CHECK(F->branch(0)->domain.str() == "[0, 1/4)");
    CHECK(F->branch(1)->domain.str() == "[1/4, 3/4)");
    CHECK(F->branch(2)->domain.str() == "[3/4, 1)");
    CHECK(*F->apply(q(1, 8)) == q(3, 4));
    CHECK(*F->apply(q(7, 8)) == q(1, 4));
}

TEST_CASE("gauss map is the continued fraction shift") {
    auto F = build(PimSpec::gauss(q(1, 1)));
    CHECK(*F->apply(q(2, 5)) == q(1, 2));
    CHECK(F->branch(1)->domain.str() == "(1/2, 1)");
    CHECK(F->branch(3)->domain.str() == "(1/4, 1/3]");
    CHECK(F->type() == PimKind::TypeB);
    auto G = build(PimSpec::gauss(q(5, 2)));  // r = 5/2: smallest digit 2
    CHECK(G->digits_up_to(4) == std::vector<Digit>{2, 3, 4});
    CHECK(G->branch(2)->domain.str() == "(5/6, 1)");
    CHECK_THROWS_AS(build(PimSpec::gauss(q(1, 2))), SpecError);
}

TEST_CASE("quadratic map fixes the renormalized logistic family") {
    auto F = build(PimSpec::quadratic(1.0));
    CHECK(F->backend() == Backend::Float);
    CHECK(F->apply(Scalar::floating(0.5))->flt() == doctest::Approx(1.0));
    CHECK(F->apply(Scalar::floating(0.0))->flt() == doctest::Approx(0.0));
    CHECK(F->apply(Scalar::floating(1.0))->flt() == doctest::Approx(0.0));
    CHECK(F->domain().contains(Scalar::floating(1.0)));

    auto G = build(PimSpec::quadratic(0.9));
    // the partition point is the parabola top, which maps to 1
    Scalar m = G->branch(0)->domain.hi();
    CHECK(G->apply(m)->flt() == doctest::Approx(1.0));
    CHECK_THROWS_AS(build(PimSpec::quadratic(0.7)), SpecError);
}

TEST_CASE("tent map rises then folds") {
    auto F = build(PimSpec::tent(2.0));
    CHECK(F->apply(Scalar::floating(0.25))->flt() == doctest::Approx(0.5));
    CHECK(F->apply(Scalar::floating(0.75))->flt() == doctest::Approx(0.5));
    CHECK(F->branch(1)->mono == Mono::TypeB);
    CHECK_THROWS_AS(build(PimSpec::tent(2.5)), SpecError);
}

TEST_CASE("cantor map indexes the removed middle thirds breadth first") {
    auto F = build(PimSpec::cantor());
    CHECK(F->branch(1)->domain.str() == "(1/3, 2/3)");
    CHECK(F->branch(2)->domain.str() == "(1/9, 2/9)");
    CHECK(F->branch(3)->domain.str() == "(7/9, 8/9)");
    CHECK(F->branch(4)->domain.str() == "(1/27, 2/27)");
    CHECK(F->branch(7)->domain.str() == "(25/27, 26/27)");
    CHECK_FALSE(F->well_ordered());
    CHECK(*F->partition().locate(q(1, 2)) == 1);
    CHECK(*F->partition().locate(q(7, 54)) == 2);
    // Cantor-set points (ternary without 1s) belong to no cell
    CHECK_FALSE(F->partition().locate(q(1, 4)).has_value());
    CHECK_FALSE(F->partition().locate(q(1, 3)).has_value());
    CHECK(*F->apply(q(1, 2)) == q(1, 2));
    CHECK(*F->apply(q(5, 27)) == q(2, 3));
}

TEST_CASE("luroth map uses full linear branches over the given cells") {
    auto F = build(PimSpec::luroth({q(1, 2), q(1, 3), q(1, 6)}));
    CHECK(F->branch(1)->domain.str() == "[1/2, 5/6)");
    CHECK(*F->apply(q(2, 3)) == q(1, 2));
    CHECK(F->branch(2)->image.str() == "[0, 1)");
    CHECK_THROWS_AS(build(PimSpec::luroth({q(1, 2), q(1, 3)})), SpecError);
}

TEST_CASE("egyptian map digit rules") {
    auto F = build(PimSpec::egyptian("integers"));
    CHECK(F->branch(2)->domain.str() == "[1/2, 1)");
    CHECK(F->branch(3)->domain.str() == "[1/3, 1/2)");
    CHECK(*F->apply(q(2, 3)) == q(1, 6));
    CHECK_FALSE(F->surjective_hint());

    auto P = build(PimSpec::egyptian("powers_of_two"));
    CHECK(P->digits_up_to(16) == std::vector<Digit>{2, 4, 8, 16});
    CHECK(P->branch(4)->domain.str() == "[1/4, 1/2)");
    CHECK(*P->apply(q(3, 10)) == q(1, 20));

    auto R = build(PimSpec::egyptian("primes"));
    CHECK(R->digits_up_to(11) == std::vector<Digit>{2, 3, 5, 7, 11});
    CHECK(R->branch(5)->domain.str() == "[1/5, 1/3)");
    CHECK(*R->apply(q(1, 4)) == q(1, 20));

    CHECK_THROWS_AS(build(PimSpec::egyptian("fibonacci")), SpecError);
}

TEST_CASE("interval exchange must re-tile the unit interval") {
    auto F = build(PimSpec::interval_exchange({q(2, 5), q(3, 5)}, {q(3, 5), q(-2, 5)}));
    CHECK(*F->apply(q(1, 5)) == q(4, 5));
    CHECK(*F->apply(q(1, 2)) == q(1, 10));
    CHECK_THROWS_AS(build(PimSpec::interval_exchange({q(2, 5), q(3, 5)}, {q(1, 5), q(-2, 5)})),
                    SpecError);
    CHECK_THROWS_AS(build(PimSpec::interval_exchange({q(2, 5), q(2, 5)}, {q(3, 5), q(-2, 5)})),
                    SpecError);
}

TEST_CASE("three-branch folded example map") {
    auto F = build(PimSpec::example_first());
    CHECK(F->domain().str() == "[0, 1]");
    CHECK(*F->apply(q(0, 1)) == q(1, 2));
    CHECK(*F->apply(q(1, 4)) == q(0, 1));
    CHECK(*F->apply(q(3, 4)) == q(1, 1));
    CHECK(*F->apply(q(1, 1)) == q(1, 2));
    CHECK(F->type() == PimKind::Mixed);
    CHECK(F->branch(0)->image.str() == "(0, 1/2]");
    CHECK(F->branch(2)->image.str() == "[1/2, 1]");
}

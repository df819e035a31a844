#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "picard.hpp"
#include "support.hpp"

using namespace g4;
using g4::testing::Rng;

TEST_CASE("canonical class and the adjusted divisors") {
    CHECK(canonical_class() == DivClass{13, -2, -2, -2});
    DivClass delta = delta_class(0) + delta_class(1) + delta_class(2);
    CHECK(canonical_class() + delta * 2 == DivClass{13, 0, 0, 0});
    CHECK(hk_divisor(Rational(1)) == canonical_class() + delta);
    CHECK(hk_divisor(Rational(2, 3)) ==
          DivClass{13, Rational(-4, 3), Rational(-4, 3), Rational(-4, 3)});
    CHECK(hk_divisor(Rational(19, 29)) ==
          DivClass{13, Rational(-39, 29), Rational(-39, 29), Rational(-39, 29)});
    // the delta1 correction coefficient vanishes at alpha = 9/11
    CHECK(9 - 11 * Rational(9, 11) == 0);
}

TEST_CASE("the contracted polarizations") {
    CHECK(L_alpha(Rational(19, 29)) == DivClass{13, Rational(-39, 29), 0, 0});
    CHECK(L_alpha(Rational(3, 5)) == DivClass{13, Rational(-7, 5), 0, 0});
    CHECK(L_alpha(Rational(13, 20)) == DivClass{13, Rational(-27, 20), 0, 0});
    CHECK(L_alpha(Rational(33, 50)) ==
          DivClass{13, Rational(-67, 50), 0, Rational(-67, 50)});
    CHECK(L_alpha_tag("2/3-eps") ==
          DivClass{13, Rational(-4, 3), 0, Rational(-4, 3)});
    CHECK_THROWS_AS(L_alpha(Rational(5, 9)), domain_error);
    CHECK_THROWS_AS(L_alpha(Rational(2, 3)), domain_error);
    CHECK_THROWS_AS(L_alpha_tag("1/2-eps"), domain_error);
}

TEST_CASE("the VGIT pullback is the stated linear form in s") {
    CHECK(vgit_pullback({Rational(3, 2), std::nullopt}) == DivClass{18, -2, -6, -6});
    auto d = vgit_pullback({Rational(17, 14), std::nullopt});
    CHECK(d.lambda == Rational(58, 7));
    CHECK(d.d0 == Rational(-6, 7));
    CHECK(d.d2 == Rational(-6, 7));
    CHECK(d.d1 == Rational(-2));
    // s = 1: plain arithmetic cross-check of the linear form
    auto e = vgit_pullback({Rational(1), std::nullopt});
    CHECK(e == DivClass{34 - 33, -(4 - 4), -(14 - 15), -(18 - 21)});
    CHECK(e == DivClass{1, 0, 1, 3});
    // t and s are interchangeable
    CHECK(vgit_pullback({std::nullopt, Rational(2, 3)}) ==
          vgit_pullback({Rational(3, 2), std::nullopt}));
    CHECK_THROWS_AS(vgit_pullback({Rational(2), Rational(2)}), structural_error);
}

TEST_CASE("slope map and its inverse") {
    CHECK(t_of_alpha(Rational(5, 9)) == Rational(2, 3));
    CHECK(t_of_alpha(Rational(23, 44)) == Rational(6, 11));
    CHECK(t_of_alpha(Rational(1, 2)) == Rational(2, 5));
    CHECK(t_of_alpha(Rational(29, 60)) == Rational(2, 9));
    CHECK(t_of_alpha(Rational(8, 17)) == Rational(0));
    CHECK_THROWS_AS(t_of_alpha(Rational(14, 33)), domain_error);

    Rng rng(733);
    int done = 0;
    while (done < 20) {
        Rational a = rng.rational(20, 12);
        if (33 * a - 14 == 0) continue;
        Rational t = t_of_alpha(a);
        if (33 * t - 34 == 0) continue;
        CHECK(alpha_of_t(t) == a);
        ++done;
    }
}

TEST_CASE("the wall table") {
    auto w = walls();
    REQUIRE(w.size() == 11);
    // nine distinct walls, indexed 1..9; the fifth has three sub-rows
    CHECK(w[3].index == 4);
    CHECK(w[3].alpha == Rational(19, 29));
    CHECK(w[3].locus_removed == "delta_2, i.e. general genus two tails");
    CHECK(w[3].singularity_introduced == "A5^sep");
    int fifth = 0;
    for (auto& r : w)
        if (r.index == 5) {
            ++fifth;
            CHECK(r.alpha == Rational(5, 9));
        }
    CHECK(fifth == 3);
    std::vector<std::string> fifth_loci;
    for (auto& r : w)
        if (r.index == 5) fifth_loci.push_back(r.locus_removed);
    REQUIRE(fifth_loci.size() == 3);
    CHECK(fifth_loci[0].find("tacnodal") != std::string::npos);
    CHECK(fifth_loci[1].find("hyperelliptic") != std::string::npos);
    CHECK(fifth_loci[2].find("triborough") != std::string::npos);
    // alphas strictly decreasing across indices
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i].index == w[i + 1].index) CHECK(w[i].alpha == w[i + 1].alpha);
        else CHECK(w[i].alpha > w[i + 1].alpha);
    }
    // the VGIT slopes of the lower walls, quoted endpoints included
    CHECK(t_of_alpha(w[4].alpha) == Rational(2, 3));
    CHECK(t_of_alpha(w[7].alpha) == Rational(6, 11));
    CHECK(t_of_alpha(w[8].alpha) == Rational(2, 5));
    CHECK(t_of_alpha(w[9].alpha) == Rational(2, 9));
    CHECK(t_of_alpha(w[10].alpha) == Rational(0));
}

TEST_CASE("identity report") {
    auto rep = verify_identities();
    for (auto& item : rep.items) {
        INFO(item.id, ": ", item.lhs, " vs ", item.rhs);
        CHECK(item.pass);
    }
    CHECK(rep.all_pass());
    REQUIRE(rep.find("nef-combination"));
    // both sides of the nef combination print the exact vector
    CHECK(rep.find("nef-combination")->lhs == DivClass{29, -3, 0, Rational(-11, 3)}.str());
}

TEST_CASE("rational function arithmetic") {
    RatFunc e = RatFunc::variable();
    RatFunc one = RatFunc::constant(1);
    // (1 - 81 e^2) / (1 - 9 e) = 1 + 9 e
    RatFunc lhs = (one - RatFunc::constant(81) * e * e) / (one - RatFunc::constant(9) * e);
    RatFunc rhs = one + RatFunc::constant(9) * e;
    CHECK(lhs == rhs);
    CHECK_THROWS_AS(one / RatFunc::zero(), structural_error);

    Rng rng(811);
    for (int trial = 0; trial < 20; ++trial) {
        auto rnd = [&]() {
            UPoly n{std::vector<Rational>{rng.rational(), rng.rational(), rng.rational()}};
            UPoly d{std::vector<Rational>{rng.nonzero_rational(), rng.rational()}};
            return RatFunc::of(n, d);
        };
        RatFunc a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a - a == RatFunc::zero());
    }
}

TEST_CASE("linearity of the class operations") {
    Rng rng(911);
    for (int trial = 0; trial < 20; ++trial) {
        Rational a = rng.rational(), b = rng.rational();
        DivClass x{rng.rational(), rng.rational(), rng.rational(), rng.rational()};
        DivClass y{rng.rational(), rng.rational(), rng.rational(), rng.rational()};
        CHECK((x + y) * a == x * a + y * a);
        CHECK(x * (a + b) == x * a + x * b);
    }
    // hk_divisor is affine-linear in alpha with slope delta
    DivClass delta = delta_class(0) + delta_class(1) + delta_class(2);
    Rational a1(3, 4), a2(5, 7);
    CHECK(hk_divisor(a1) - hk_divisor(a2) == delta * (a1 - a2));
}

TEST_CASE("printing") {
    CHECK(DivClass{13, Rational(-39, 29), 0, 0}.str() == "13λ - 39/29 δ0 + 0 δ1 + 0 δ2");
}

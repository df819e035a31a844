#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "germ.hpp"
#include "poly_parse.hpp"
#include "support.hpp"

#include <set>

using namespace g4;
using g4::testing::Rng;

namespace {

VarTablePtr xy() { return VarTable::make({"x", "y"}); }
MPoly P(const std::string& s, const VarTablePtr& t) { return parse_poly(s, t); }
std::vector<Rational> origin() { return {Rational(0), Rational(0)}; }

// Subalgebra-gap delta computation for a pair of smooth branches with
// monomial parametrizations in ambient coordinates: branch j maps its
// parameter to t^{e_ij} in coordinate i, with exponent -1 meaning the
// coordinate vanishes on the branch.  The delta invariant is the
// codimension of the generated subalgebra inside k[[t]] x k[[s]],
// computed on a truncation large enough to be stable.
int delta_of_two_monomial_branches(const std::array<int, 3>& e1,
                                   const std::array<int, 3>& e2) {
    const int N = 24; // truncation order
    std::vector<std::pair<int, int>> gens;
    for (int i = 0; i < 3; ++i) {
        if (e1[i] < 0 && e2[i] < 0) continue; // zero function
        // positive exponents only; a 0 exponent would be a unit and cannot
        // occur for coordinates vanishing at the singular point
        REQUIRE(e1[i] != 0);
        REQUIRE(e2[i] != 0);
        gens.push_back({e1[i], e2[i]});
    }
    // Reachable monomials in the generators; -1 absorbs (vanishing branch).
    std::set<std::pair<int, int>> reach{{0, 0}};
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = reach;
        for (auto& r : snapshot)
            for (auto& g : gens) {
                int a = (r.first < 0 || g.first < 0) ? -1 : r.first + g.first;
                int b = (r.second < 0 || g.second < 0) ? -1 : r.second + g.second;
                if (a > N || b > N) continue;
                if (a < 0 && b < 0) continue;
                if (reach.insert({a, b}).second) grew = true;
            }
    }
    // Rank of the span inside k[[t]]/t^{N+1} x k[[s]]/s^{N+1}.
    std::set<int> tcov, scov; // exponents >= 1 covered on each side alone
    std::vector<std::pair<int, int>> joint;
    int rank = 0;
    for (auto& r : reach) {
        if (r.first == 0 && r.second == 0) { ++rank; continue; } // the unit (1,1)
        if (r.first >= 1 && r.second < 0) tcov.insert(r.first);
        else if (r.second >= 1 && r.first < 0) scov.insert(r.second);
        else joint.push_back(r); // t^a + s^b with a,b >= 1
    }
    rank += static_cast<int>(tcov.size() + scov.size());
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::pair<int, int>> residual;
        for (auto& j : joint) {
            bool tin = tcov.count(j.first) > 0;
            bool sin = scov.count(j.second) > 0;
            if (tin && sin) continue;
            if (tin) { scov.insert(j.second); ++rank; progress = true; }
            else if (sin) { tcov.insert(j.first); ++rank; progress = true; }
            else residual.push_back(j);
        }
        joint = residual;
    }
    std::set<std::pair<int, int>> counted;
    for (auto& j : joint)
        if (counted.insert(j).second) ++rank;
    return 2 * (N + 1) - rank;
}

} // namespace

TEST_CASE("multiplicity") {
    auto t = xy();
    CHECK(multiplicity(Germ::at_origin(P("y^2-x^3", t))) == 2);
    auto t12 = VarTable::make({"x1", "x2"});
    CHECK(multiplicity(Germ::at_origin(P("x1^3+x2^3", t12))) == 3);
    CHECK(multiplicity(Germ::at_origin(P("x", t))) == 1);
    CHECK(multiplicity(Germ(P("y^2-x^3", t), {Rational(1), Rational(1)})) == 1);
    CHECK_THROWS_AS(multiplicity(Germ::at_origin(MPoly(t))), domain_error);
}

TEST_CASE("intersection multiplicity axioms and examples") {
    auto t = xy();
    auto I = [&](const std::string& f, const std::string& g) {
        return intersection_multiplicity(P(f, t), P(g, t), origin());
    };
    CHECK(I("x", "y").value == 1);
    CHECK(I("y", "y-x^2").value == 2);
    CHECK(I("y^2-x^3", "3*x^2").value == 4);
    CHECK(I("x", "x").infinite);
    CHECK(I("x-1", "y").value == 0); // misses the origin
    // symmetry and additivity on products
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        MPoly f = rng.poly(t, 3, 3);
        MPoly g = rng.poly(t, 3, 3);
        MPoly h = rng.poly(t, 2, 2);
        auto at0 = [&](MPoly& p) {
            p -= MPoly::constant(t, p.eval(origin())); // force through origin
        };
        at0(f);
        at0(g);
        at0(h);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        auto fg = intersection_multiplicity(f, g, origin());
        auto gf = intersection_multiplicity(g, f, origin());
        CHECK(fg.infinite == gf.infinite);
        if (!fg.infinite) CHECK(fg.value == gf.value);
        auto fgh = intersection_multiplicity(f, g * h, origin());
        auto fh = intersection_multiplicity(f, h, origin());
        if (!fgh.infinite && !fg.infinite && !fh.infinite)
            CHECK(fgh.value == fg.value + fh.value);
        // invariance under g -> g + a f
        auto shifted = intersection_multiplicity(f, g + f * Rational(3, 2), origin());
        CHECK(shifted.infinite == fg.infinite);
        if (!fg.infinite) CHECK(shifted.value == fg.value);
    }
}

TEST_CASE("Fulton numbers agree with the resultant-order oracle") {
    auto t = xy();
    Rng rng(211);
    int done = 0;
    int attempts = 0;
    while (done < 50 && attempts < 4000) {
        ++attempts;
        MPoly f = rng.poly(t, 3, 4);
        MPoly g = rng.poly(t, 3, 4);
        f -= MPoly::constant(t, f.eval(origin()));
        g -= MPoly::constant(t, g.eval(origin()));
        if (f.is_zero() || g.is_zero()) continue;
        if (!gcd(f, g).is_constant()) continue;
        // random linear change to put the configuration in general position
        auto m = rng.gl2();
        MPoly fs = f.linear_change(m);
        MPoly gs = g.linear_change(m);
        if (fs.degree_in(1) < 1 || gs.degree_in(1) < 1) continue;
        // oracle validity: top y-coefficients must not vanish at x=0, and the
        // only common root on the line x=0 must be y=0
        auto fy = fs.coeffs_in(1).back();
        auto gy = gs.coeffs_in(1).back();
        if (fy.eval(origin()) == 0 || gy.eval(origin()) == 0) continue;
        MPoly f0 = fs.substitute({{0, MPoly(t)}}, t);
        MPoly g0 = gs.substitute({{0, MPoly(t)}}, t);
        if (f0.is_zero() || g0.is_zero()) continue;
        UPoly common = gcd(as_univariate(f0, 1), as_univariate(g0, 1));
        if (common.degree() != common.order_at_zero()) continue; // other shared roots on x=0
        MPoly res = resultant(fs, gs, 1);
        if (res.is_zero()) continue;
        int oracle = order_at(as_univariate(res, 0), Rational(0));
        auto fulton = intersection_multiplicity(fs, gs, origin());
        REQUIRE_FALSE(fulton.infinite);
        CHECK(fulton.value == oracle);
        ++done;
    }
    CHECK(done >= 50);
}

TEST_CASE("Milnor numbers") {
    auto t = xy();
    CHECK(milnor_number(Germ::at_origin(P("y^2-x^3", t))) == 2);
    CHECK(milnor_number(Germ::at_origin(P("y^2-x^6", t))) == 5);
    CHECK(milnor_number(Germ::at_origin(P("x^3+y^3", t))) == 4);
    CHECK_THROWS_AS(milnor_number(Germ::at_origin(P("y^2", t))), domain_error);
}

TEST_CASE("classification of the named germ types") {
    auto t = xy();
    SUBCASE("A_k ladder up to A9") {
        for (int k = 1; k <= 9; ++k) {
            MPoly f = P("y^2", t) - MPoly::variable(t, 0, k + 1);
            GermClass c = classify_germ(Germ::at_origin(f));
            CHECK(c.kind == GermKind::A);
            CHECK(c.k == k);
            CHECK(c.mu == k);
            CHECK(c.delta == (k + 1) / 2);
            CHECK(c.branches == (k % 2 ? 2 : 1));
            CHECK(c.multiplicity == 2);
        }
    }
    SUBCASE("node as a product of branches") {
        GermClass c = classify_germ(Germ::at_origin(P("x*y", t)));
        CHECK(c.kind == GermKind::A);
        CHECK(c.k == 1);
    }
    SUBCASE("the separating-tacnode local equation s(u^3+s)") {
        auto su = VarTable::make({"s", "u"});
        GermClass c = classify_germ(Germ::at_origin(P("s*(u^3+s)", su)));
        CHECK(c.kind == GermKind::A);
        CHECK(c.k == 5);
    }
    SUBCASE("ordinary triple point") {
        auto t12 = VarTable::make({"x1", "x2"});
        GermClass c = classify_germ(Germ::at_origin(P("x1^3+x2^3", t12)));
        CHECK(c.kind == GermKind::D4);
        CHECK(c.mu == 4);
        CHECK(c.delta == 3);
        CHECK(c.branches == 3);
    }
    SUBCASE("beyond the table: E6 falls into Other with exact data") {
        GermClass c = classify_germ(Germ::at_origin(P("y^3-x^4", t)));
        CHECK(c.kind == GermKind::Other);
        CHECK(c.mu == 6);
        CHECK(c.branches == 1);
        CHECK(c.branches_exact);
        CHECK(c.delta == 3);
        CHECK(c.multiplicity == 3);
    }
    SUBCASE("ordinary 4-fold point") {
        MPoly f = P("x", t) * P("y", t) * P("x-y", t) * P("x+2*y", t);
        GermClass c = classify_germ(Germ::at_origin(f));
        CHECK(c.kind == GermKind::Other);
        CHECK(c.mu == 9);
        CHECK(c.branches == 4);
        CHECK(c.branches_exact);
        CHECK(c.delta == 6);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(classify_germ(Germ::at_origin(P("x^2*y", t))), domain_error);
        CHECK_THROWS_AS(classify_germ(Germ::at_origin(P("x+1", t))), domain_error);
    }
}

TEST_CASE("mu = 2 delta - r + 1 for every emitted class") {
    auto t = xy();
    std::vector<std::string> zoo = {
        "x*y",        "y^2-x^3",       "y^2-x^4",   "y^2-x^5",    "y^2-x^9",
        "x^3+y^3",    "y^3-x^4",       "y^3-x^5",   "x*y*(x-y)",  "y*(y-x^2)",
        "(y-x^2)*(y+x^2)", "x*(x^2-y^3)", "y^2-x^10",
    };
    for (const auto& s : zoo) {
        GermClass c = classify_germ(Germ::at_origin(P(s, t)));
        if (!c.branches_exact) continue;
        INFO(s);
        CHECK(c.mu == 2 * c.delta - c.branches + 1);
    }
}

TEST_CASE("classifier is invariant under coordinate changes and units") {
    auto t = xy();
    Rng rng(307);
    std::vector<std::string> reps = {"x*y", "y^2-x^3", "y^2-x^4", "y^2-x^7",
                                     "x^3+y^3", "y^3-x^4"};
    for (const auto& s : reps) {
        GermClass base = classify_germ(Germ::at_origin(P(s, t)));
        for (int trial = 0; trial < 6; ++trial) {
            MPoly f = P(s, t).linear_change(rng.gl2());
            // multiply by a unit germ 1 + (higher order)
            MPoly unit = MPoly::constant(t, 1) + rng.poly(t, 2, 2) -
                         MPoly::constant(t, rng.poly(t, 2, 2).eval(origin()));
            unit -= MPoly::constant(t, unit.eval(origin())) - MPoly::constant(t, 1);
            MPoly g = f * unit * rng.nonzero_rational();
            GermClass c = classify_germ(Germ::at_origin(g));
            INFO(s);
            CHECK(c == base);
        }
    }
}

TEST_CASE("vertex classification via the double cover") {
    auto t = xy();
    SUBCASE("paper instances and the extension pattern") {
        CHECK(classify_vertex(Germ::at_origin(P("y^2-x^6", t))) == a_class(3));
        CHECK(classify_vertex(Germ::at_origin(P("y^2-x^8", t))) == a_class(4));
        CHECK(classify_vertex(Germ::at_origin(P("x*y", t))) == a_class(1));
        CHECK(classify_vertex(Germ::at_origin(P("y^2-x^4", t))) == a_class(2));
        CHECK(classify_vertex(Germ::at_origin(P("x", t))) == smooth_class());
    }
    SUBCASE("cover parity is asserted, never coerced") {
        // an invariant multiplicity-2 germ always has odd A-type; feed a
        // non-invariant cover and expect rejection
        CHECK_THROWS_AS(classify_vertex(Germ::at_origin(P("y^2-x^3", t))), domain_error);
        CHECK_THROWS_AS(classify_vertex(Germ::at_origin(P("y^2-x^5", t))), domain_error);
        // invariant but not of A-type (three even branches)
        CHECK_THROWS_AS(classify_vertex(Germ::at_origin(P("x^4-x^2*y^2+y^4", t))),
                        domain_error);
    }
    SUBCASE("invariant multiplicity-2 germs classify as odd A") {
        Rng rng(401);
        for (int trial = 0; trial < 20; ++trial) {
            // random invariant cover: y^2 + even-degree tail through origin
            MPoly f = P("y^2", t);
            int d = 2 * rng.range(1, 3) + 2;
            f += MPoly::monomial(t, {d, 0}, rng.nonzero_rational());
            if (rng.range(0, 1)) f += MPoly::monomial(t, {d - 2, 2}, rng.rational());
            GermClass cover = classify_germ(Germ::at_origin(f));
            if (cover.kind != GermKind::A) continue;
            CHECK(cover.k % 2 == 1);
        }
    }
    SUBCASE("delta oracle for the k=1 instance") {
        // push the two invariant branches of (xy = 0) to the quotient chart
        // k[x^2, xy, y^2]: the images are the u- and w-axes on the cone,
        // each smooth, glued at one point.
        // branch {x=0}: (u,v,w) = (0, 0, s); branch {y=0}: (t, 0, 0).
        int delta = delta_of_two_monomial_branches({-1, -1, 1}, {1, -1, -1});
        CHECK(delta == 1);
        CHECK(classify_vertex(Germ::at_origin(P("x*y", t))).delta == delta);
    }
}

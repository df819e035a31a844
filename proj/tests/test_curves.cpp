#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "curves.hpp"
#include "poly_parse.hpp"
#include "support.hpp"

#include <algorithm>

using namespace g4;
using g4::testing::Rng;

namespace {

CurveSpec ci_curve(const std::string& q, const std::string& c) {
    auto t = ci_vars();
    CurveSpec spec;
    spec.ambient = CIAmbient{parse_poly(q, t), parse_poly(c, t)};
    spec.equation = MPoly(t);
    return spec;
}

CurveSpec c2a5() { return ci_curve("x0*x3-x1*x2", "x0*x2^2+x1^2*x3"); }
CurveSpec cd() { return ci_curve("x0*x3", "x1^3+x2^3"); }
CurveSpec cab(const Rational& A, const Rational& B) {
    auto t = ci_vars();
    CurveSpec spec;
    MPoly cubic = parse_poly("x1^3", t) * A + parse_poly("x0*x1*x2", t) * B +
                  parse_poly("x0^2*x3", t);
    spec.ambient = CIAmbient{parse_poly("x2^2-x1*x3", t), cubic};
    spec.equation = MPoly(t);
    return spec;
}

std::vector<GermClass> classes_of(const SingularityInventory& inv) {
    std::vector<GermClass> out;
    for (auto& e : inv.entries)
        for (int i = 0; i < e.orbit_size; ++i) out.push_back(e.cls);
    std::sort(out.begin(), out.end(), [](const GermClass& a, const GermClass& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.k < b.k;
    });
    return out;
}

bool has_class(const SingularityInventory& inv, GermKind kind, int k, int times) {
    return inv.count(kind, k) == times;
}

} // namespace

TEST_CASE("arithmetic genus") {
    auto p = p1xp1_vars();
    CurveSpec c33;
    c33.ambient = P1xP1Ambient{};
    c33.equation = parse_poly("x^3*u^3 + y^3*v^3 + x^2*y*u^2*v", p);
    CHECK(arithmetic_genus(c33) == 4);

    auto w = wp_vars({1, 1, 2});
    CurveSpec s6;
    s6.ambient = WeightedPlaneAmbient{{1, 1, 2}};
    s6.equation = parse_poly("y^2*z^2 + x^6", w);
    CHECK(arithmetic_genus(s6) == 4);

    auto w5 = wp_vars({1, 1, 5});
    CurveSpec hyp;
    hyp.ambient = WeightedPlaneAmbient{{1, 1, 5}};
    hyp.equation = parse_poly("z^2 - x^5*y^5", w5);
    CHECK(arithmetic_genus(hyp) == 4);

    auto w3 = wp_vars({1, 1, 3});
    CurveSpec g2;
    g2.ambient = WeightedPlaneAmbient{{1, 1, 3}};
    g2.equation = parse_poly("z^2 - x^0*x^3*z + y^6", w3); // degree 6
    CHECK(arithmetic_genus(g2) == 2);

    CHECK(arithmetic_genus(c2a5()) == 4);
    CHECK(arithmetic_genus(WeierstrassCurve{4, parse_poly("x^5*y^5", binary_vars())}) == 4);
}

TEST_CASE("quadric rank") {
    auto t = ci_vars();
    CHECK(quadric_rank(parse_poly("x0*x3-x1*x2", t)) == 4);
    CHECK(quadric_rank(parse_poly("x2^2-x1*x3", t)) == 3);
    CHECK(quadric_rank(parse_poly("x0*x3", t)) == 2);
    CHECK(quadric_rank(parse_poly("x0^2", t)) == 1);
    CHECK_THROWS_AS(quadric_rank(parse_poly("x0^3", t)), domain_error);

    SUBCASE("congruence invariance") {
        Rng rng(17);
        for (const char* qs : {"x0*x3-x1*x2", "x2^2-x1*x3", "x0*x3"}) {
            MPoly q = parse_poly(qs, t);
            int r = quadric_rank(q);
            for (int trial = 0; trial < 5; ++trial) {
                auto m = rng.gln(4);
                CHECK(quadric_rank(q.linear_change(m)) == r);
            }
        }
    }
}

TEST_CASE("quadric normalization produces the stated normal forms") {
    auto t = ci_vars();
    auto zt = VarTable::make({"z0", "z1", "z2", "z3"});
    Rng rng(19);
    auto check_normal = [&](const MPoly& q) {
        auto n = normalize_quadric(q);
        MPoly image = apply_transform(q, n.transform, zt);
        MPoly expected(zt);
        switch (n.kind) {
        case QuadricKind::SmoothQuadric:
            expected = parse_poly("z0*z3-z1*z2", zt);
            break;
        case QuadricKind::QuadricCone:
            expected = parse_poly("z1^2-z0*z2", zt);
            break;
        case QuadricKind::TwoPlanes:
            expected = parse_poly("z0*z3", zt);
            break;
        }
        CHECK(image == expected * n.scale);
    };
    for (const char* qs : {"x0*x3-x1*x2", "x2^2-x1*x3", "x0*x3", "x0^2+x0*x3-x1*x2"}) {
        MPoly q = parse_poly(qs, t);
        if (quadric_rank(q) < 2) continue;
        check_normal(q);
        for (int trial = 0; trial < 4; ++trial) check_normal(q.linear_change(rng.gln(4)));
    }
    // anisotropic rank-2 part: no rational two-plane splitting
    CHECK_THROWS_AS(normalize_quadric(parse_poly("x0^2+x1^2", t)), domain_error);
    // Witt index 1: a hyperbolic plane plus an anisotropic plane is not the
    // Segre quadric over Q
    CHECK_THROWS_AS(normalize_quadric(parse_poly("x0^2-x1*x2+x3^2-x0*x3", t)), domain_error);
}

TEST_CASE("singular points of the named curves") {
    SUBCASE("C_AB(1,0): vertex and one smooth-chart point") {
        auto pts = rational_singular_points(cab(1, 0));
        REQUIRE(pts.size() == 2);
        bool vertex_seen = false, chart_seen = false;
        for (auto& [chart, p] : pts) {
            if (chart == "vertex") vertex_seen = true;
            if (chart == "y=1" && p[0] == 0 && p[1] == 0) chart_seen = true;
        }
        CHECK(vertex_seen);
        CHECK(chart_seen);
    }
    SUBCASE("a smooth (3,3) curve has none") {
        auto p = p1xp1_vars();
        CurveSpec c;
        c.ambient = P1xP1Ambient{};
        c.equation = parse_poly("x^3*u^3 + x^3*v^3 + y^3*u^3 - y^3*v^3", p);
        CHECK(rational_singular_points(c).empty());
    }
    SUBCASE("C_D: three rational points, conjugate pair flagged") {
        auto inv = singularity_inventory(cd());
        REQUIRE(inv.warnings.size() == 1);
        CHECK(inv.warnings[0].find("2 non-rational") == 0);
        auto pts = rational_singular_points(cd());
        CHECK(pts.size() == 3);
    }
}

TEST_CASE("inventory of C_2A5") {
    auto inv = singularity_inventory(c2a5());
    REQUIRE(inv.entries.size() == 2);
    CHECK(has_class(inv, GermKind::A, 5, 2));
    CHECK(inv.total_delta == 6);

    // three rational components: two rulings and a (1,3) curve
    ComponentModel model;
    model.components = {{0, 1, 1, "ruling 1"}, {0, 1, 1, "ruling 2"}, {0, 1, 4, "(1,3) curve"}};
    model.incidences = {{0, 0, 1}, {0, 2, 1}, {1, 1, 1}, {1, 2, 1}};
    CHECK(genus_budget_check(inv, model, 4));
    CHECK(inv.certified_complete);

    // both tacnodes separate the curve
    CHECK(separating_check(inv, 0, model));
    CHECK(separating_check(inv, 1, model));
}

TEST_CASE("separating check edge cases") {
    SingularityInventory inv;
    InventoryEntry e;
    e.cls = a_class(5);
    inv.entries = {e, e};
    inv.recompute_delta();
    SUBCASE("self-loop never disconnects") {
        ComponentModel m;
        m.components = {{2, 1, 6, "irreducible"}};
        m.incidences = {{0, 0, 2}, {1, 0, 2}};
        CHECK_FALSE(separating_check(inv, 0, m));
    }
    SUBCASE("two parallel edges") {
        InventoryEntry n;
        n.cls = a_class(1);
        SingularityInventory inv2;
        inv2.entries = {e, n};
        inv2.recompute_delta();
        ComponentModel m;
        m.components = {{2, 1, 3, "g2 a"}, {2, 1, 3, "g2 b"}};
        m.incidences = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
        CHECK_FALSE(separating_check(inv2, 0, m));
        CHECK_FALSE(separating_check(inv2, 1, m));
    }
    SUBCASE("non-two-branch entries are rejected") {
        SingularityInventory inv3;
        InventoryEntry d;
        d.cls = d4_class();
        inv3.entries = {d};
        ComponentModel m;
        m.components = {{1, 1, 3, "c"}};
        CHECK_THROWS_AS(separating_check(inv3, 0, m), domain_error);
    }
}

TEST_CASE("inventory of C_D with the supplied conjugate pair") {
    InventoryEntry orbit;
    orbit.chart = "double line";
    orbit.cls = a_class(1);
    orbit.orbit_size = 2;
    orbit.note = "conjugate pair on x1^2 - x1 x2 + x2^2";
    auto inv = singularity_inventory(cd(), {orbit});
    CHECK(has_class(inv, GermKind::D4, 0, 2));
    CHECK(has_class(inv, GermKind::A, 1, 3));
    CHECK(inv.total_delta == 9);

    ComponentModel model;
    model.components = {{0, 1, 1, "line"},
                        {0, 2, 1, "conjugate lines"},
                        {0, 1, 1, "line"},
                        {0, 2, 1, "conjugate lines"}};
    CHECK(genus_budget_check(inv, model, 4));
}

TEST_CASE("inventory of the C_AB family") {
    SUBCASE("(1,0): tacnode at the vertex, A5 on the smooth locus") {
        auto inv = singularity_inventory(cab(1, 0));
        CHECK(has_class(inv, GermKind::A, 3, 1));
        CHECK(has_class(inv, GermKind::A, 5, 1));
        CHECK(inv.total_delta == 5);
        bool vertex = false;
        for (auto& e : inv.entries)
            if (e.chart == "vertex") { vertex = true; CHECK(e.cls.k == 3); }
        CHECK(vertex);
        // two conjugate rational components: y z = +- i x^3 on the cone model;
        // the budget then forces 0 + 5 - 2 + 1 = 4
        ComponentModel model;
        model.components = {{0, 2, 3, "conjugate twisted cubics"}};
        CHECK(genus_budget_check(inv, model, 4));
    }
    SUBCASE("(1,0): component count certified over a quadratic extension") {
        // (y z - s x^3)(y z + s x^3) = y^2 z^2 + x^6 modulo s^2 + 1
        auto t = VarTable::make({"x", "y", "z", "s"});
        MPoly lhs = parse_poly("(y*z - s*x^3)*(y*z + s*x^3)", t);
        MPoly target = parse_poly("y^2*z^2 + x^6", t);
        auto q = try_divide(lhs - target, parse_poly("s^2+1", t));
        REQUIRE(q.has_value());
        // and each factor is rational: (t, 1, s t^3) parametrizes y z = s x^3
        auto pt = VarTable::make({"t", "s"});
        MPoly factor = parse_poly("y*z - s*x^3", t);
        MPoly pulled = factor.substitute_names({{"x", parse_poly("t", pt)},
                                                {"y", MPoly::constant(pt, 1)},
                                                {"z", parse_poly("s*t^3", pt)},
                                                {"s", parse_poly("s", pt)}},
                                               pt);
        CHECK(pulled.is_zero());
    }
    SUBCASE("(0,1): an extra node appears") {
        auto inv = singularity_inventory(cab(0, 1));
        CHECK(has_class(inv, GermKind::A, 3, 1));
        CHECK(has_class(inv, GermKind::A, 5, 1));
        CHECK(has_class(inv, GermKind::A, 1, 1));
        CHECK(inv.total_delta == 6);
        ComponentModel model;
        model.components = {{0, 1, 1, "ruling"}, {0, 1, 2, "conic section"},
                            {0, 1, 3, "twisted cubic"}};
        CHECK(genus_budget_check(inv, model, 4));
    }
    SUBCASE("(1,2): the ribbon member is non-reduced") {
        auto c = cab(1, 2); // 4A = B^2
        CHECK_THROWS_AS(singularity_inventory(c), domain_error);
        auto s = curve_structure(c);
        CHECK(s.ribbon);
        CHECK_FALSE(s.reduced);
    }
}

TEST_CASE("curve structure flags") {
    SUBCASE("triborough on two planes") {
        auto s = curve_structure(cd());
        CHECK(s.quadric_rank == 2);
        CHECK(s.triborough); // x1^3 + x2^3 has three distinct roots on the line
        CHECK_FALSE(s.ribbon);
    }
    SUBCASE("vertex entry on the cone") {
        auto s = curve_structure(cab(1, 0));
        CHECK(s.quadric_rank == 3);
        REQUIRE(s.vertex_entry.has_value());
        CHECK(s.vertex_entry->k == 3);
    }
    SUBCASE("smooth quadric") {
        auto s = curve_structure(c2a5());
        CHECK(s.quadric_rank == 4);
        CHECK_FALSE(s.vertex_entry.has_value());
        CHECK(has_class(s.inventory, GermKind::A, 5, 2));
    }
}

TEST_CASE("Weierstrass singularity rules") {
    auto b = binary_vars();
    SUBCASE("x^5 y^5: two ramphoid cusps") {
        WeierstrassCurve w{4, parse_poly("x^5*y^5", b)};
        auto inv = weierstrass_singularities(w);
        CHECK(has_class(inv, GermKind::A, 4, 2));
        CHECK(inv.total_delta == 4);
        CHECK(inv.certified_complete);
    }
    SUBCASE("squarefree: smooth hyperelliptic") {
        WeierstrassCurve w{4, parse_poly("x^10+y^10", b)};
        auto inv = weierstrass_singularities(w);
        CHECK(inv.entries.empty());
        CHECK(inv.certified_complete); // genus 4 double cover, no delta
    }
    SUBCASE("one double root") {
        WeierstrassCurve w{4, parse_poly("x^2*(x^8+y^8)", b)};
        auto inv = weierstrass_singularities(w);
        CHECK(has_class(inv, GermKind::A, 1, 1));
        CHECK(inv.total_delta == 1);
        CHECK(inv.certified_complete);
    }
    SUBCASE("ribbon input") {
        WeierstrassCurve w{4, MPoly(b)};
        CHECK_THROWS_AS(weierstrass_singularities(w), domain_error);
    }
    SUBCASE("perfect square splits into two sections") {
        WeierstrassCurve w{4, parse_poly("(x*y*(x^3-y^3))^2", b)};
        auto inv = weierstrass_singularities(w);
        // five simple contact points of the two sections
        CHECK(has_class(inv, GermKind::A, 1, 5));
        CHECK(inv.certified_complete);
    }
}

TEST_CASE("Weierstrass inventory agrees with chart-level germ classification") {
    auto b = binary_vars();
    Rng rng(509);
    int done = 0;
    while (done < 20) {
        // random degree-10 form with prescribed rational root structure
        MPoly f = MPoly::constant(b, rng.nonzero_rational());
        int deg = 0;
        std::vector<std::pair<Rational, int>> roots;
        while (deg < 10) {
            Rational r = rng.rational(3, 1);
            bool fresh = std::all_of(roots.begin(), roots.end(),
                                     [&](auto& p) { return p.first != r; });
            if (!fresh) continue;
            int m = std::min(10 - deg, rng.range(1, 4));
            roots.emplace_back(r, m);
            MPoly lin = parse_poly("x", b) - MPoly::constant(b, r) * parse_poly("y", b);
            f *= pow(lin, m);
            deg += m;
        }
        WeierstrassCurve w{4, f};
        auto inv = weierstrass_singularities(w);
        // cross-check every multiple root against classify_germ on the chart
        // z^2 = f(x,1) germ at (r, 0)
        auto ct = VarTable::make({"x", "z"});
        MPoly fx1 = f.substitute({{1, MPoly::constant(b, 1)}}, b);
        std::map<int, MPoly> im{{0, MPoly::variable(ct, 0)}, {1, MPoly(ct)}};
        MPoly fc = fx1.substitute(im, ct);
        MPoly germ_poly = MPoly::variable(ct, 1, 2) - fc;
        for (auto& [r, m] : roots) {
            if (m < 2) continue;
            GermClass direct = classify_germ(Germ(germ_poly, {r, Rational(0)}));
            CHECK(direct == a_class(m - 1));
            bool found = false;
            for (auto& e : inv.entries)
                if (e.chart == "branch point" && e.cls == a_class(m - 1) &&
                    e.point[1] != 0 && e.point[0] / e.point[1] == r)
                    found = true;
            CHECK(found);
        }
        // multiset comparison: inventory classes match the root structure
        int multiple = 0;
        for (auto& [r, m] : roots)
            if (m >= 2) ++multiple;
        int inv_count = 0;
        for (auto& e : inv.entries) inv_count += e.orbit_size;
        CHECK(inv_count == multiple);
        ++done;
    }
}

TEST_CASE("inventory is equivariant under ambient coordinate changes") {
    Rng rng(613);
    SUBCASE("P1xP1") {
        auto p = p1xp1_vars();
        CurveSpec c;
        c.ambient = P1xP1Ambient{};
        c.equation = parse_poly("2*x*y*(2*y*u^3+x*v^3)", p); // the Segre form of C_2A5
        auto base = classes_of(singularity_inventory(c));
        for (int trial = 0; trial < 5; ++trial) {
            auto m2a = rng.gl2();
            auto m2b = rng.gl2();
            std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4, Rational(0)));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    m[i][j] = m2a[i][j];
                    m[2 + i][2 + j] = m2b[i][j];
                }
            CurveSpec ct = c;
            ct.equation = c.equation.linear_change(m);
            CHECK(classes_of(singularity_inventory(ct)) == base);
        }
    }
    SUBCASE("P(1,1,2) with weighted automorphisms") {
        auto w = wp_vars({1, 1, 2});
        CurveSpec c;
        c.ambient = WeightedPlaneAmbient{{1, 1, 2}};
        c.equation = parse_poly("y^2*z^2+2*x^3*y*z+x^6+y^2*(x^4+y^4)", w); // A3 vertex form
        auto base = classes_of(singularity_inventory(c));
        for (int trial = 0; trial < 5; ++trial) {
            auto m2 = rng.gl2();
            // x,y transform linearly; z -> lambda z + q(x,y)
            Rational lambda = rng.nonzero_rational(3, 2);
            MPoly q2 = rng.poly(w, 0, 0); // quadratic in x,y below
            MPoly qq(w);
            qq += MPoly::monomial(w, {2, 0, 0}, rng.rational(2, 1));
            qq += MPoly::monomial(w, {1, 1, 0}, rng.rational(2, 1));
            qq += MPoly::monomial(w, {0, 2, 0}, rng.rational(2, 1));
            std::map<int, MPoly> im;
            im[0] = MPoly::variable(w, 0) * m2[0][0] + MPoly::variable(w, 1) * m2[0][1];
            im[1] = MPoly::variable(w, 0) * m2[1][0] + MPoly::variable(w, 1) * m2[1][1];
            im[2] = MPoly::variable(w, 2) * lambda + qq;
            CurveSpec ct = c;
            ct.equation = c.equation.substitute(im, w);
            CHECK(classes_of(singularity_inventory(ct)) == base);
        }
    }
    SUBCASE("complete intersections under GL4") {
        auto base_spec = c2a5();
        auto base = classes_of(singularity_inventory(base_spec));
        const auto& ci = std::get<CIAmbient>(base_spec.ambient);
        auto t = ci_vars();
        for (int trial = 0; trial < 3; ++trial) {
            auto m = rng.gln(4, 6);
            CurveSpec ct;
            ct.ambient = CIAmbient{ci.quadric.linear_change(m), ci.cubic.linear_change(m)};
            ct.equation = MPoly(t);
            CHECK(classes_of(singularity_inventory(ct)) == base);
        }
    }
}

TEST_CASE("budget failures are reported") {
    auto inv = singularity_inventory(c2a5());
    ComponentModel wrong;
    wrong.components = {{0, 1, 1, "just one line"}};
    CHECK_FALSE(genus_budget_check(inv, wrong, 4));
    CHECK_FALSE(inv.certified_complete);
}

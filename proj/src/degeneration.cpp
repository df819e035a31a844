#include "degeneration.hpp"

#include "curves.hpp"
#include "errors.hpp"
#include "germ.hpp"
#include "poly_parse.hpp"

#include <algorithm>

namespace g4 {

MPoly one_ps_limit(const MPoly& f, const OnePS& rho) {
    if (f.is_zero())
        throw domain_error(domain_fault::zero_input, "limit of the zero polynomial");
    auto vars = f.vars();
    for (int i = 0; i < vars->arity(); ++i)
        if (f.uses_var(i) && !rho.weights.count(i))
            throw structural_error("one-parameter subgroup does not weight " + vars->name(i));
    auto rho_sum = [&](const Exponents& e) {
        long s = 0;
        for (auto& [v, w] : rho.weights) s += static_cast<long>(w) * e[v];
        return s;
    };
    long best = 0;
    bool first = true;
    for (auto& [e, c] : f.terms()) {
        long s = rho_sum(e);
        if (first || s > best) best = s;
        first = false;
    }
    MPoly out(vars);
    for (auto& [e, c] : f.terms())
        if (rho_sum(e) == best) out += MPoly::monomial(vars, e, c);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_p112_sextic(const MPoly& F) {
    auto vars = F.vars();
    if (vars->arity() != 3 || vars->weight(0) != 1 || vars->weight(1) != 1 ||
        vars->weight(2) != 2)
        throw structural_error("expected the ring of P(1,1,2)");
    int d = 0;
    if (!F.is_weighted_homogeneous(&d) || d != 6)
        throw structural_error("expected a weighted sextic");
}

Germ cover_germ(const MPoly& F) {
    auto vars = F.vars();
    auto tb = VarTable::make({vars->name(0), vars->name(1)});
    std::map<int, MPoly> im{{0, MPoly::variable(tb, 0)},
                            {1, MPoly::variable(tb, 1)},
                            {2, MPoly::constant(tb, 1)}};
    return Germ::at_origin(F.substitute(im, tb));
}

} // namespace

MPoly align_vertex_tangent(const MPoly& F) {
    require_p112_sextic(F);
    auto vars = F.vars();
    auto zc = F.coeffs_in(2);
    if (zc.size() > 3 && !zc[3].is_zero())
        throw domain_error(domain_fault::precondition, "the vertex is not on the curve");
    if (zc.size() < 3 || zc[2].is_zero())
        throw domain_error(domain_fault::precondition,
                           "vertex multiplicity exceeds 2: no tangent line to align");
    MPoly q2 = zc[2]; // binary quadratic in x, y
    Rational a = q2.coeff_of({{0, 2}});
    Rational b = q2.coeff_of({{0, 1}, {1, 1}});
    Rational c = q2.coeff_of({{1, 2}});
    Rational disc = b * b - a * c * 4;
    if (disc != 0)
        throw domain_error(domain_fault::precondition,
                           "vertex tangent cone is not a double line (node at the vertex)");
    // q2 = s * l^2 with l = p x + q y
    Rational p, q, s;
    if (a != 0) {
        // q2 = a (x + b/(2a) y)^2
        p = 1;
        q = b / (2 * a);
        s = a;
    } else {
        // a = 0 and disc = 0 force b = 0
        p = 0;
        q = 1;
        s = c;
    }
    // substitute so that l becomes y
    std::map<int, MPoly> im;
    if (q != 0) {
        // x stays, y = (y' - p x)/q
        im[1] = (MPoly::variable(vars, 1) - MPoly::variable(vars, 0) * p) * (Rational(1) / q);
    } else {
        // l = p x: swap the roles of x and y, rescale
        im[0] = MPoly::variable(vars, 1) * (Rational(1) / p);
        im[1] = MPoly::variable(vars, 0);
    }
    MPoly aligned = F.substitute(im, vars);
    return aligned * (Rational(1) / s);
}

NormalFormA3 a3_normal_form(const MPoly& F) {
    require_p112_sextic(F);
    auto vars = F.vars();
    auto zc = F.coeffs_in(2);
    if (zc.size() > 3 && !zc[3].is_zero())
        throw domain_error(domain_fault::precondition, "the vertex is not on the curve");
    MPoly y2 = MPoly::variable(vars, 1, 2);
    if (zc.size() < 3 || zc[2] != y2)
        throw domain_error(domain_fault::precondition,
                           "input is not aligned: the z^2-coefficient must be y^2");
    MPoly g4 = zc.size() > 1 ? zc[1] : MPoly(vars);
    MPoly g6 = zc[0];
    if (g4.coeff_of({{0, 4}}) != 0)
        throw domain_error(domain_fault::precondition,
                           "x^4-term in the z-coefficient: the vertex is A2, not A3");
    Rational B = g4.coeff_of({{0, 3}, {1, 1}});
    Rational A = g6.coeff_of({{0, 6}});
    if (4 * A == B * B)
        throw domain_error(domain_fault::ribbon_direction,
                           "4A = B^2: the construction degenerates along the ribbon direction");
    GermClass vc = classify_vertex(cover_germ(F));
    if (!(vc.kind == GermKind::A && vc.k == 3))
        throw domain_error(domain_fault::precondition,
                           "vertex classifies as " + vc.label() + ", not A3");

    Rational a2 = g4.coeff_of({{0, 2}, {1, 2}});
    Rational b5 = g6.coeff_of({{0, 5}, {1, 1}});
    // coeff_{x^5 y}(g6 after the shear) = b5 - B a2/2 + (3/2)(4A - B^2) v
    Rational v = (B * a2 / 2 - b5) / (Rational(3, 2) * (4 * A - B * B));

    MPoly x = MPoly::variable(vars, 0), y = MPoly::variable(vars, 1);
    MPoly g4_sheared = g4.substitute({{0, x + y * v}}, vars);
    MPoly num = pow(x, 3) * y * B - g4_sheared;
    MPoly q = divide_exact(num, y2 * Rational(2));

    std::map<int, MPoly> sigma{{0, x + y * v}, {2, MPoly::variable(vars, 2) + q}};
    MPoly standard = F.substitute(sigma, vars);

    auto sc = standard.coeffs_in(2);
    if (sc[2] != y2 || sc.size() < 3)
        throw domain_error(domain_fault::inconsistent, "shear destroyed the alignment");
    MPoly want_g4 = pow(x, 3) * y * B;
    if (sc[1] != want_g4)
        throw domain_error(domain_fault::inconsistent, "shear did not normalize the z-coefficient");
    MPoly tail = sc[0] - pow(x, 6) * A;
    MPoly h4 = divide_exact(tail, y2);

    NormalFormA3 out;
    out.A = A;
    out.B = B;
    out.h4 = h4;
    out.transform = {v, q};
    out.standard_form = standard;
    return out;
}

NormalFormA4 a4_vertex_normal_form(const MPoly& F) {
    require_p112_sextic(F);
    auto vars = F.vars();
    {
        GermClass vc = classify_vertex(cover_germ(F));
        if (!(vc.kind == GermKind::A && vc.k == 4))
            throw domain_error(domain_fault::precondition,
                               "vertex classifies as " + vc.label() + ", not A4");
    }
    MPoly aligned = align_vertex_tangent(F);
    auto zc = aligned.coeffs_in(2);
    MPoly x = MPoly::variable(vars, 0), y = MPoly::variable(vars, 1);
    MPoly y2 = y * y;
    MPoly g4 = zc.size() > 1 ? zc[1] : MPoly(vars);
    if (g4.coeff_of({{0, 4}}) != 0)
        throw domain_error(domain_fault::inconsistent,
                           "x^4-term after alignment contradicts the A4 vertex");
    Rational Bt = g4.coeff_of({{0, 3}, {1, 1}});
    MPoly q = divide_exact(pow(x, 3) * y * Bt - g4, y2 * Rational(2));
    MPoly f1 = aligned.substitute({{2, MPoly::variable(vars, 2) + q}}, vars);
    auto c1 = f1.coeffs_in(2);
    MPoly g6 = c1[0];
    Rational A6 = g6.coeff_of({{0, 6}});
    if (4 * A6 != Bt * Bt)
        throw domain_error(domain_fault::inconsistent,
                           "4A != B^2 after the shear contradicts the A4 vertex");
    Rational u = -Bt / 2;
    if (u == 0)
        throw domain_error(domain_fault::precondition,
                           "degenerate tangency data (u = 0) contradicts the A4 vertex");
    // y -> u y, then divide by u^2: the x^3 y z coefficient becomes -2
    MPoly f2 = f1.substitute({{1, y * u}}, vars) * (Rational(1) / (u * u));
    auto c2 = f2.coeffs_in(2);
    Rational b5 = c2[0].coeff_of({{0, 5}, {1, 1}});
    if (c2[0].coeff_of({{0, 6}}) != 1)
        throw domain_error(domain_fault::inconsistent, "x^6-coefficient did not normalize to 1");
    if (b5 == 0)
        throw domain_error(domain_fault::precondition,
                           "b5 = 0 after alignment contradicts the A4 vertex");
    // weight-(1,3) rescale through mu = lambda^2: every coefficient moves by
    // an even power of lambda, so the result stays rational
    Rational mu = -Rational(1) / b5;
    MPoly f3(vars);
    for (auto& [e, c] : f2.terms()) {
        // (x,y,z) -> (l^-1 x, l y, l^-4 z), then divide by the y^2z^2 factor l^-6
        long lam_exp = -e[0] + e[1] - 4 * e[2] + 6;
        if (lam_exp % 2 != 0)
            throw domain_error(domain_fault::inconsistent, "odd rescale exponent");
        Rational scale(1);
        long half = lam_exp / 2;
        Rational base = (half >= 0) ? mu : Rational(1) / mu;
        for (long i = 0; i < std::abs(half); ++i) scale *= base;
        f3 += MPoly::monomial(vars, e, c * scale);
    }
    auto c3 = f3.coeffs_in(2);
    if (c3[2] != y2 || c3[1] != pow(x, 3) * y * Rational(-2))
        throw domain_error(domain_fault::inconsistent, "rescale destroyed the normalization");
    if (c3[0].coeff_of({{0, 6}}) != 1 || c3[0].coeff_of({{0, 5}, {1, 1}}) != -1)
        throw domain_error(domain_fault::inconsistent, "b6 = 1, b5 = -1 failed on the output");
    {
        GermClass vc = classify_vertex(cover_germ(f3));
        if (!(vc.kind == GermKind::A && vc.k == 4))
            throw domain_error(domain_fault::inconsistent, "normalization changed the vertex type");
    }
    MPoly tail = c3[0] - pow(x, 6) + pow(x, 5) * y;
    NormalFormA4 out;
    out.normalized = f3;
    out.h4 = divide_exact(tail, y2);
    return out;
}

// ---------------------------------------------------------------------------

bool TCReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

TCReport verify_test_configuration(const TestConfiguration& tc) {
    TCReport report;
    // (i) Gm-invariance: every family equation is weight-homogeneous
    for (size_t i = 0; i < tc.equations.size(); ++i) {
        const MPoly& eq = tc.equations[i];
        long weight = 0;
        bool first = true, ok = true;
        std::string detail;
        for (auto& [e, c] : eq.terms()) {
            long w = 0;
            for (auto& [v, gw] : tc.gm_weights) w += static_cast<long>(gw) * e[v];
            if (first) weight = w;
            else if (w != weight) ok = false;
            first = false;
        }
        report.items.push_back({"invariance of equation " + std::to_string(i), ok,
                                eq.str(), ok ? "Gm-weight " + std::to_string(weight)
                                             : "mixed Gm-weights"});
    }
    // (ii)/(iii) substitution identities
    for (auto& chk : tc.checks) {
        const MPoly& src = (chk.source_equation >= 0)
                               ? tc.equations.at(chk.source_equation)
                               : chk.source;
        MPoly lhs = src.substitute_names(chk.images, chk.target);
        bool ok = (lhs == chk.expected);
        report.items.push_back({chk.label, ok, lhs.str(), chk.expected.str()});
    }
    return report;
}

MPoly a4_normal_sextic(const std::vector<Rational>& b) {
    if (b.size() != 5) throw structural_error("expected five tail coefficients b0..b4");
    auto vars = wp_vars({1, 1, 2});
    MPoly F = parse_poly("y^2*z^2 - 2*x^3*y*z + x^6 - x^5*y", vars);
    for (int i = 0; i <= 4; ++i)
        F += MPoly::monomial(vars, {i, 6 - i, 0}, b[i]);
    return F;
}

TestConfiguration a4_cone_family(const std::vector<Rational>& b) {
    if (b.size() != 5) throw structural_error("expected five tail coefficients b0..b4");
    auto zt = VarTable::make({"z0", "z1", "z2", "z3", "s"}, {1, 1, 2, 3, 1});
    TestConfiguration tc;
    tc.vars = zt;
    MPoly total = parse_poly("s*z3 - z1^3 + z0*z2", zt);
    MPoly curve = parse_poly("z3^2 - z0^2*z1^2*z2 - s*z0*z1^2*z3", zt);
    for (int i = 0; i <= 4; ++i)
        curve += MPoly::monomial(zt, {6 - i, i, 0, 0, 10 - 2 * i}, b[i]);
    tc.equations = {total, curve};
    tc.gm_weights = {{0, 0}, {1, 2}, {2, 6}, {3, 5}, {4, 1}};

    auto xt = wp_vars({1, 1, 2});
    MPoly x = MPoly::variable(xt, 0), y = MPoly::variable(xt, 1), z = MPoly::variable(xt, 2);
    std::map<std::string, MPoly> iota{{"z0", y},
                                      {"z1", x},
                                      {"z2", z},
                                      {"z3", pow(x, 3) - y * z},
                                      {"s", MPoly::constant(xt, 1)}};
    tc.checks.push_back({"s=1 fiber lies on the total space", MPoly(), 0, iota, xt, MPoly(xt)});
    tc.checks.push_back({"s=1 fiber equals the input curve", MPoly(), 1, iota, xt,
                         a4_normal_sextic(b)});

    auto yt = VarTable::make({"y0", "y1", "y2"}, {1, 2, 9});
    MPoly y0 = MPoly::variable(yt, 0), y1 = MPoly::variable(yt, 1), y2 = MPoly::variable(yt, 2);
    std::map<std::string, MPoly> iota1{{"z0", pow(y0, 3)},
                                       {"z1", y0 * y1},
                                       {"z2", pow(y1, 3)},
                                       {"z3", y2},
                                       {"s", MPoly(yt)}};
    tc.checks.push_back({"s=0 total space contains the first contraction image", MPoly(), 0,
                         iota1, yt, MPoly(yt)});
    tc.checks.push_back({"s=0 fiber is y2^2 - y0^8 y1^5", MPoly(), 1, iota1, yt,
                         pow(y2, 2) - pow(y0, 8) * pow(y1, 5)});

    auto wt = VarTable::make({"x0", "x1", "x2", "x3"}, {1, 1, 5, 9});
    MPoly X0 = MPoly::variable(wt, 0), X1 = MPoly::variable(wt, 1),
          X2 = MPoly::variable(wt, 2), X3 = MPoly::variable(wt, 3);
    // second identification: [y0,y1,y2] -> [y0^2, y1, y0 y2, y2^2]
    std::map<std::string, MPoly> images2{{"x0", pow(y0, 2)},
                                         {"x1", y1},
                                         {"x2", y0 * y2},
                                         {"x3", pow(y2, 2)}};
    tc.checks.push_back({"the second identification lands on x2^2 = x0 x3",
                         pow(X2, 2) - X0 * X3, -1, images2, yt, MPoly(yt)});
    tc.checks.push_back({"the relation x3 = x0^4 x1^5 recovers the s=0 fiber",
                         X3 - pow(X0, 4) * pow(X1, 5), -1, images2, yt,
                         pow(y2, 2) - pow(y0, 8) * pow(y1, 5)});
    // eliminating x3 by that relation inside x2^2 - x0 x3
    auto w5 = wp_vars({1, 1, 5});
    std::map<std::string, MPoly> elim{{"x0", MPoly::variable(w5, 0)},
                                      {"x1", MPoly::variable(w5, 1)},
                                      {"x2", MPoly::variable(w5, 2)},
                                      {"x3", MPoly::variable(w5, 0, 4) *
                                                 MPoly::variable(w5, 1, 5)}};
    tc.checks.push_back({"eliminating x3 yields the two-cusp hyperelliptic curve",
                         pow(X2, 2) - X0 * X3, -1, elim, w5,
                         MPoly::variable(w5, 2, 2) -
                             MPoly::variable(w5, 0, 5) * MPoly::variable(w5, 1, 5)});
    return tc;
}

} // namespace g4

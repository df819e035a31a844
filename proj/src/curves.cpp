#include "curves.hpp"

#include "errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace g4 {

namespace {

VarTablePtr table2(const std::string& a, const std::string& b) {
    return VarTable::make({a, b});
}

std::string key_of(const std::vector<Rational>& v) {
    std::string s;
    for (auto& x : v) s += to_string(x) + ",";
    return s;
}

// Normalize a projective tuple: first nonzero coordinate scaled to 1.
// Weighted coordinates scale as lambda^w.
std::vector<Rational> proj_normalize(std::vector<Rational> v, const std::vector<int>& weights) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (weights[i] != 1) continue; // normalize at a weight-1 coordinate only
        Rational lambda = Rational(1) / v[i];
        std::vector<Rational> out(v.size());
        for (size_t j = 0; j < v.size(); ++j) {
            Rational p = lambda;
            for (int k = 1; k < weights[j]; ++k) p *= lambda;
            out[j] = v[j] * p;
        }
        return out;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Affine singular-point location for a reduced curve in a 2-variable chart.

MPoly content_in(const MPoly& g, int var) {
    auto cs = g.coeffs_in(var);
    MPoly c(g.vars());
    for (auto& ci : cs) c = gcd(c, ci);
    return c;
}

std::vector<std::vector<Rational>> affine_singular_points(const MPoly& g) {
    auto vars = g.vars();
    if (vars->arity() != 2) throw structural_error("affine chart must have two variables");
    std::vector<std::vector<Rational>> out;
    if (g.is_constant()) return out;

    const int S = 0, T = 1;
    MPoly gs = g.derivative(S), gt = g.derivative(T);
    MPoly rep = gcd(gcd(g, gs), gt);
    if (!rep.is_constant())
        throw domain_error(domain_fault::non_reduced, "curve has a repeated component");

    // split off factors depending on one variable only
    MPoly cs = content_in(g, T); // pure-s factors
    MPoly h1 = divide_exact(g, cs);
    MPoly ct = content_in(h1, S); // pure-t factors
    MPoly h = divide_exact(h1, ct);

    std::set<std::string> seen;
    auto push = [&](const Rational& a, const Rational& b) {
        std::vector<Rational> p{a, b};
        if (g.eval(p) != 0 || gs.eval(p) != 0 || gt.eval(p) != 0) return;
        if (seen.insert(key_of(p)).second) out.push_back(p);
    };

    std::vector<Rational> s_lines, t_lines;
    if (!cs.is_constant())
        for (auto& [r, m] : rational_roots(as_univariate(cs, S))) s_lines.push_back(r);
    if (!ct.is_constant())
        for (auto& [r, m] : rational_roots(as_univariate(ct, T))) t_lines.push_back(r);

    // crossings of coordinate-direction lines
    for (auto& a : s_lines)
        for (auto& b : t_lines) push(a, b);

    // crossings of lines with the mixed part
    if (!h.is_constant()) {
        for (auto& a : s_lines) {
            MPoly ha = h.substitute({{S, MPoly::constant(vars, a)}}, vars);
            if (ha.is_zero()) continue;
            if (ha.is_constant()) continue;
            for (auto& [b, m] : rational_roots(as_univariate(ha, T))) push(a, b);
        }
        for (auto& b : t_lines) {
            MPoly hb = h.substitute({{T, MPoly::constant(vars, b)}}, vars);
            if (hb.is_zero() || hb.is_constant()) continue;
            for (auto& [a, m] : rational_roots(as_univariate(hb, S))) push(a, b);
        }
        // singular points of the mixed part itself
        if (h.degree_in(T) >= 1) {
            MPoly ht = h.derivative(T);
            MPoly res = resultant(h, ht, T);
            if (res.is_zero())
                throw domain_error(domain_fault::inconsistent,
                                   "squarefree mixed part with vanishing discriminant");
            if (!res.is_constant()) {
                for (auto& [a, m] : rational_roots(as_univariate(res, S))) {
                    // candidate verticals: collect rational common roots
                    MPoly ga = g.substitute({{S, MPoly::constant(vars, a)}}, vars);
                    if (ga.is_zero()) continue;
                    if (ga.is_constant()) continue;
                    for (auto& [b, mb] : rational_roots(as_univariate(ga, T))) push(a, b);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
        if (p[0] != q[0]) return p[0] < q[0];
        return p[1] < q[1];
    });
    return out;
}

struct LocatedGerm {
    std::string chart;
    std::vector<Rational> point; // chart coordinates
    MPoly chart_poly;            // lives in a 2-variable ring
    bool vertex = false;         // classify through the double cover
    std::vector<Rational> canonical; // projective representative for dedup
    std::vector<int> canonical_weights;
};

// ---------------------------------------------------------------------------
// P1 x P1 atlas

void locate_p1xp1(const MPoly& eq, std::vector<LocatedGerm>& out) {
    auto vars = eq.vars();
    struct Chart {
        const char* label;
        int fixed_a, fixed_b; // variables set to 1
        int free_a, free_b;
    };
    // variables: 0=x, 1=y, 2=u, 3=v
    std::vector<Chart> charts = {{"y=1,v=1", 1, 3, 0, 2},
                                 {"y=1,u=1", 1, 2, 0, 3},
                                 {"x=1,v=1", 0, 3, 1, 2},
                                 {"x=1,u=1", 0, 2, 1, 3}};
    std::set<std::string> seen;
    for (auto& ch : charts) {
        auto tb = table2(vars->name(ch.free_a), vars->name(ch.free_b));
        std::map<int, MPoly> im;
        im[ch.fixed_a] = MPoly::constant(tb, 1);
        im[ch.fixed_b] = MPoly::constant(tb, 1);
        im[ch.free_a] = MPoly::variable(tb, 0);
        im[ch.free_b] = MPoly::variable(tb, 1);
        MPoly g = eq.substitute(im, tb);
        for (auto& p : affine_singular_points(g)) {
            std::vector<Rational> proj(4, Rational(0));
            proj[ch.fixed_a] = 1;
            proj[ch.fixed_b] = 1;
            proj[ch.free_a] = p[0];
            proj[ch.free_b] = p[1];
            // normalize the two factors independently
            std::vector<Rational> f1{proj[0], proj[1]}, f2{proj[2], proj[3]};
            f1 = proj_normalize(f1, {1, 1});
            f2 = proj_normalize(f2, {1, 1});
            std::vector<Rational> canon{f1[0], f1[1], f2[0], f2[1]};
            if (!seen.insert(key_of(canon)).second) continue;
            out.push_back({ch.label, p, g, false, canon, {1, 1, 1, 1}});
        }
    }
}

// ---------------------------------------------------------------------------
// P(1,1,2) atlas

void locate_wp112(const MPoly& eq, std::vector<LocatedGerm>& out) {
    auto vars = eq.vars(); // x, y, z with weights 1,1,2
    std::set<std::string> seen;
    struct Chart {
        const char* label;
        int fixed;
        int free_a, free_b;
    };
    std::vector<Chart> charts = {{"x=1", 0, 1, 2}, {"y=1", 1, 0, 2}};
    for (auto& ch : charts) {
        auto tb = table2(vars->name(ch.free_a), vars->name(ch.free_b));
        std::map<int, MPoly> im;
        im[ch.fixed] = MPoly::constant(tb, 1);
        im[ch.free_a] = MPoly::variable(tb, 0);
        im[ch.free_b] = MPoly::variable(tb, 1);
        MPoly g = eq.substitute(im, tb);
        for (auto& p : affine_singular_points(g)) {
            std::vector<Rational> proj(3, Rational(0));
            proj[ch.fixed] = 1;
            proj[ch.free_a] = p[0];
            proj[ch.free_b] = p[1];
            auto canon = proj_normalize(proj, {1, 1, 2});
            if (!seen.insert(key_of(canon)).second) continue;
            out.push_back({ch.label, p, g, false, canon, {1, 1, 2}});
        }
    }
    // vertex [0:0:1]: on the curve iff the z^3 coefficient vanishes
    if (eq.coeff_of({{2, 3}}) == 0) {
        auto tb = table2(vars->name(0), vars->name(1));
        std::map<int, MPoly> im;
        im[2] = MPoly::constant(tb, 1);
        im[0] = MPoly::variable(tb, 0);
        im[1] = MPoly::variable(tb, 1);
        MPoly cover = eq.substitute(im, tb);
        LocatedGerm lg;
        lg.chart = "vertex";
        lg.point = {Rational(0), Rational(0)};
        lg.chart_poly = cover;
        lg.vertex = true;
        lg.canonical = {Rational(0), Rational(0), Rational(1)};
        lg.canonical_weights = {1, 1, 2};
        out.push_back(std::move(lg));
    }
}

// ---------------------------------------------------------------------------
// Two planes (rank-2 quadric): plane cubics glued along the double line.

struct TwoPlanesData {
    MPoly cubic_a; // in (z1, z2, z3): the plane z0 = 0
    MPoly cubic_b; // in (z0, z1, z2): the plane z3 = 0
    MPoly on_line; // binary cubic in (z1, z2): restriction to the double line
};

TwoPlanesData split_two_planes(const MPoly& cz) {
    auto zt = cz.vars();
    TwoPlanesData d{MPoly(zt), MPoly(zt), MPoly(zt)};
    d.cubic_a = cz.substitute({{0, MPoly(zt)}}, zt);
    d.cubic_b = cz.substitute({{3, MPoly(zt)}}, zt);
    d.on_line = cz.substitute({{0, MPoly(zt)}, {3, MPoly(zt)}}, zt);
    if (d.cubic_a.is_zero() || d.cubic_b.is_zero())
        throw domain_error(domain_fault::unsupported,
                           "the cubic vanishes on a plane of the quadric: not a curve");
    return d;
}

// Classify the union of two germs lying in the two planes of a rank-2
// quadric.  Both germs share the coordinate s along the double line; the
// normals are identified by a generic affine map fixing the line pointwise
// (n2 -> c n, s -> s + a n).  A degenerate identification only inflates the
// local intersection, so the generic class is the one of minimal delta; we
// require two identifications to agree on it.
GermClass classify_plane_pair(const MPoly& f1, const MPoly& f2) {
    auto tb = f1.vars(); // ("s","n")
    GermClass best;
    int best_delta = -1;
    int agreement = 0;
    const std::pair<int, int> ids[] = {{0, 1}, {0, 2}, {1, 1}, {1, 3}, {2, 5}, {3, 2}};
    for (auto [a, c] : ids) {
        MPoly s = MPoly::variable(tb, 0), n = MPoly::variable(tb, 1);
        MPoly f2c = f2.substitute({{0, s + n * Rational(a)}, {1, n * Rational(c)}}, tb);
        GermClass cls;
        try {
            cls = classify_germ(Germ::at_origin(f1 * f2c));
        } catch (const domain_error&) {
            continue; // degenerate identification (shared branch image)
        }
        if (best_delta < 0 || cls.delta < best_delta) {
            best = cls;
            best_delta = cls.delta;
            agreement = 1;
        } else if (cls.delta == best_delta && cls == best) {
            ++agreement;
        }
    }
    if (agreement < 2)
        throw domain_error(domain_fault::inconsistent,
                           "no stable generic gluing of the coplanar branches");
    return best;
}

// Plane-cubic germ at a point of the double line, in chart coordinates
// (s along the line, n the normal inside that plane).
MPoly plane_germ_at_line(const MPoly& plane_cubic, int line_a, int line_b, int normal,
                         const std::vector<Rational>& p, const VarTablePtr& sn) {
    auto zt = plane_cubic.vars();
    // p = [p_a : p_b] on the line; use the chart where the larger slot is 1
    std::map<int, MPoly> im;
    MPoly s = MPoly::variable(sn, 0), n = MPoly::variable(sn, 1);
    if (p[0] != 0) {
        im[line_a] = MPoly::constant(sn, 1);
        im[line_b] = s + MPoly::constant(sn, p[1] / p[0]);
    } else {
        im[line_a] = s; // base point at s = 0
        im[line_b] = MPoly::constant(sn, 1);
    }
    im[normal] = n;
    for (int v = 0; v < zt->arity(); ++v)
        if (!im.count(v)) im[v] = MPoly(sn);
    return plane_cubic.substitute(im, sn);
}

void locate_two_planes(const MPoly& cz, std::vector<LocatedGerm>& out,
                       std::vector<std::string>& warnings) {
    auto zt = cz.vars();
    auto d = split_two_planes(cz);
    if (d.on_line.is_zero())
        throw domain_error(domain_fault::unsupported,
                           "the curve contains the double line of the quadric");

    // plane-internal singular points, away from the line
    struct PlaneChart {
        const char* label;
        MPoly cubic;
        std::array<int, 3> coords; // ambient indices of the plane's coordinates
    };
    std::vector<PlaneChart> planes = {{"plane z0=0", d.cubic_a, {1, 2, 3}},
                                      {"plane z3=0", d.cubic_b, {0, 1, 2}}};
    for (auto& pl : planes) {
        std::set<std::string> seen;
        for (int fixed = 0; fixed < 3; ++fixed) {
            int fa = (fixed + 1) % 3, fb = (fixed + 2) % 3;
            auto tb = table2(zt->name(pl.coords[fa]), zt->name(pl.coords[fb]));
            std::map<int, MPoly> im;
            im[pl.coords[fixed]] = MPoly::constant(tb, 1);
            im[pl.coords[fa]] = MPoly::variable(tb, 0);
            im[pl.coords[fb]] = MPoly::variable(tb, 1);
            for (int v = 0; v < 4; ++v)
                if (!im.count(v)) im[v] = MPoly(tb);
            MPoly g = pl.cubic.substitute(im, tb);
            if (g.is_zero()) continue;
            for (auto& p : affine_singular_points(g)) {
                std::vector<Rational> proj(3, Rational(0));
                proj[fixed] = 1;
                proj[fa] = p[0];
                proj[fb] = p[1];
                auto canon = proj_normalize(proj, {1, 1, 1});
                if (!seen.insert(key_of(canon)).second) continue;
                // points on the double line are handled by the gluing pass
                bool on_line = (pl.coords[0] == 1) ? (canon[2] == 0)  // z3 = 0 in plane A
                                                   : (canon[0] == 0); // z0 = 0 in plane B
                if (on_line) continue;
                std::vector<Rational> amb(4, Rational(0));
                for (int i = 0; i < 3; ++i) amb[pl.coords[i]] = canon[i];
                LocatedGerm lg;
                lg.chart = pl.label;
                lg.point = p;
                lg.chart_poly = g;
                lg.canonical = amb;
                lg.canonical_weights = {1, 1, 1, 1};
                out.push_back(std::move(lg));
            }
        }
    }

    // points on the double line: both plane cubics pass through every zero of
    // the restriction; classify the union of the two germs in a common plane
    auto tbl = table2(zt->name(1), zt->name(2));
    std::map<int, MPoly> lim{{0, MPoly(tbl)},
                             {1, MPoly::variable(tbl, 0)},
                             {2, MPoly::variable(tbl, 1)},
                             {3, MPoly(tbl)}};
    MPoly rest2 = d.on_line.substitute(lim, tbl);
    auto roots = binary_form_roots(rest2);
    int missed = 0;
    for (auto& [size, mult] : roots.conjugate_packets) missed += size;
    auto sn = table2("s", "n");
    for (auto& [pt, mult] : roots.rational) {
        std::vector<Rational> p{pt[0], pt[1]};
        MPoly f1 = plane_germ_at_line(d.cubic_a, 1, 2, 3, p, sn);
        MPoly f2 = plane_germ_at_line(d.cubic_b, 1, 2, 0, p, sn);
        LocatedGerm lg;
        lg.chart = "double line";
        lg.point = p;
        lg.chart_poly = f1; // representative; the pair is rebuilt for classification
        lg.canonical = {Rational(0), p[0], p[1], Rational(0)};
        lg.canonical_weights = {1, 1, 1, 1};
        out.push_back(std::move(lg));
        (void)f2;
        (void)mult;
    }
    if (missed > 0)
        warnings.push_back(std::to_string(missed) +
                           " non-rational point(s) on the double line; supply them as "
                           "Galois-orbit entries");
}

} // namespace

// ---------------------------------------------------------------------------

VarTablePtr p1xp1_vars() { return VarTable::make({"x", "y", "u", "v"}); }

VarTablePtr wp_vars(const std::array<int, 3>& w) {
    return VarTable::make({"x", "y", "z"}, {w[0], w[1], w[2]});
}

VarTablePtr ci_vars() { return VarTable::make({"x0", "x1", "x2", "x3"}); }

VarTablePtr binary_vars() { return VarTable::make({"x", "y"}); }

bool CurveSpec::has_tag(const std::string& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}

void validate(const CurveSpec& c) {
    if (std::holds_alternative<CIAmbient>(c.ambient)) {
        const auto& ci = std::get<CIAmbient>(c.ambient);
        int d = 0;
        if (!ci.quadric.is_homogeneous(&d) || d != 2)
            throw structural_error("CI ambient needs a homogeneous quadric of degree 2");
        if (!ci.cubic.is_homogeneous(&d) || d != 3)
            throw structural_error("CI ambient needs a homogeneous cubic of degree 3");
        if (try_divide(ci.cubic, ci.quadric).has_value())
            throw structural_error("the cubic is divisible by the quadric");
        return;
    }
    if (c.equation.is_zero()) throw structural_error("curve equation is zero");
    if (std::holds_alternative<P1xP1Ambient>(c.ambient)) {
        // bihomogeneous: constant degree in (x,y) and in (u,v)
        int dxy = -1, duv = -1;
        for (auto& [e, coeff] : c.equation.terms()) {
            int a = e[0] + e[1], b = e[2] + e[3];
            if (dxy < 0) { dxy = a; duv = b; }
            else if (dxy != a || duv != b)
                throw structural_error("equation is not bihomogeneous");
        }
    } else {
        const auto& wp = std::get<WeightedPlaneAmbient>(c.ambient);
        for (int w : wp.weights)
            if (w < 1) throw structural_error("weights must be positive");
        if (!c.equation.is_weighted_homogeneous(nullptr))
            throw structural_error("equation is not weighted-homogeneous");
    }
    if (!c.components.empty()) {
        MPoly prod = MPoly::constant(c.equation.vars(), 1);
        for (auto& [f, m] : c.components) prod *= pow(f, m);
        auto ratio = try_divide(c.equation, prod);
        if (!ratio || !ratio->is_constant())
            throw structural_error("component factorization does not multiply to the equation");
    }
}

int arithmetic_genus(const CurveSpec& c) {
    if (std::holds_alternative<P1xP1Ambient>(c.ambient)) {
        int a = -1, b = -1;
        for (auto& [e, coeff] : c.equation.terms()) {
            a = e[0] + e[1];
            b = e[2] + e[3];
            break;
        }
        if (a < 1 || b < 1)
            throw domain_error(domain_fault::unsupported, "bidegree too small for a curve");
        return (a - 1) * (b - 1);
    }
    if (std::holds_alternative<CIAmbient>(c.ambient)) return 4;
    const auto& wp = std::get<WeightedPlaneAmbient>(c.ambient);
    int a = wp.weights[0], b = wp.weights[1], w = wp.weights[2];
    int d = c.equation.weighted_degree();
    long num = static_cast<long>(d) * (d - a - b - w);
    long den = 2L * a * b * w;
    if (num % den != 0)
        throw domain_error(domain_fault::unsupported,
                           "adjunction does not give an integer genus for this degree");
    return static_cast<int>(num / den + 1);
}

void SingularityInventory::recompute_delta() {
    total_delta = 0;
    for (auto& e : entries) total_delta += e.orbit_size * e.cls.delta;
}

int SingularityInventory::count(GermKind kind, int k) const {
    int n = 0;
    for (auto& e : entries)
        if (e.cls.kind == kind && (k < 0 || e.cls.k == k)) n += e.orbit_size;
    return n;
}

namespace {

// Full location pass shared by the point lister and the inventory builder.
struct Location {
    std::vector<LocatedGerm> germs;
    std::vector<std::string> warnings;
    // for the two-planes case the double-line germs need both plane germs
    std::vector<std::pair<MPoly, MPoly>> line_pairs; // parallel to germs with chart "double line"
};

Location locate(const CurveSpec& c) {
    Location loc;
    validate(c);
    if (std::holds_alternative<P1xP1Ambient>(c.ambient)) {
        locate_p1xp1(c.equation, loc.germs);
        return loc;
    }
    if (std::holds_alternative<WeightedPlaneAmbient>(c.ambient)) {
        const auto& wp = std::get<WeightedPlaneAmbient>(c.ambient);
        if (wp.weights == std::array<int, 3>{1, 1, 2}) {
            locate_wp112(c.equation, loc.germs);
            return loc;
        }
        // hyperelliptic models z^2 = f on P(1,1,g+1) go through the
        // Weierstrass rules instead
        throw domain_error(domain_fault::unsupported,
                           "direct chart analysis is implemented for P(1,1,2); use the "
                           "Weierstrass route for P(1,1,g+1) models");
    }
    const auto& ci = std::get<CIAmbient>(c.ambient);
    auto norm = normalize_quadric(ci.quadric);
    auto zt = VarTable::make({"z0", "z1", "z2", "z3"});
    MPoly cz = apply_transform(ci.cubic, norm.transform, zt);
    if (norm.kind == QuadricKind::SmoothQuadric) {
        auto st = p1xp1_vars(); // (x,y)=(s,t) rulings, (u,v)
        // z0 = x u, z1 = x v, z2 = y u, z3 = y v parametrizes z0 z3 = z1 z2
        std::map<int, MPoly> seg{
            {0, MPoly::variable(st, 0) * MPoly::variable(st, 2)},
            {1, MPoly::variable(st, 0) * MPoly::variable(st, 3)},
            {2, MPoly::variable(st, 1) * MPoly::variable(st, 2)},
            {3, MPoly::variable(st, 1) * MPoly::variable(st, 3)}};
        MPoly f = cz.substitute(seg, st);
        locate_p1xp1(f, loc.germs);
        return loc;
    }
    if (norm.kind == QuadricKind::QuadricCone) {
        auto wt = wp_vars({1, 1, 2});
        // z0 = x^2, z1 = x y, z2 = y^2, z3 = z parametrizes z1^2 = z0 z2
        std::map<int, MPoly> cone{{0, MPoly::variable(wt, 0, 2)},
                                  {1, MPoly::variable(wt, 0) * MPoly::variable(wt, 1)},
                                  {2, MPoly::variable(wt, 1, 2)},
                                  {3, MPoly::variable(wt, 2)}};
        MPoly f = cz.substitute(cone, wt);
        locate_wp112(f, loc.germs);
        return loc;
    }
    locate_two_planes(cz, loc.germs, loc.warnings);
    return loc;
}

GermClass classify_located(const CurveSpec& c, const LocatedGerm& lg) {
    if (lg.vertex) return classify_vertex(Germ::at_origin(lg.chart_poly));
    if (lg.chart == "double line") {
        // rebuild both plane germs and classify the glued pair
        const auto& ci = std::get<CIAmbient>(c.ambient);
        auto norm = normalize_quadric(ci.quadric);
        auto zt = VarTable::make({"z0", "z1", "z2", "z3"});
        MPoly cz = apply_transform(ci.cubic, norm.transform, zt);
        auto d = split_two_planes(cz);
        auto sn = table2("s", "n");
        MPoly f1 = plane_germ_at_line(d.cubic_a, 1, 2, 3, lg.point, sn);
        MPoly f2 = plane_germ_at_line(d.cubic_b, 1, 2, 0, lg.point, sn);
        return classify_plane_pair(f1, f2);
    }
    return classify_germ(Germ(lg.chart_poly, lg.point));
}

} // namespace

std::vector<std::pair<std::string, std::vector<Rational>>>
rational_singular_points(const CurveSpec& c) {
    auto loc = locate(c);
    std::vector<std::pair<std::string, std::vector<Rational>>> out;
    for (auto& lg : loc.germs) {
        if (lg.vertex) {
            // the vertex is a singular point of the curve only when the cover
            // germ is singular (or the curve is singular there as a germ)
            GermClass cls = classify_vertex(Germ::at_origin(lg.chart_poly));
            if (cls.kind == GermKind::Smooth) continue;
        }
        out.emplace_back(lg.chart, lg.point);
    }
    return out;
}

SingularityInventory singularity_inventory(const CurveSpec& c,
                                           const std::vector<InventoryEntry>& extra) {
    auto loc = locate(c);
    SingularityInventory inv;
    inv.warnings = loc.warnings;
    for (auto& lg : loc.germs) {
        GermClass cls = classify_located(c, lg);
        if (cls.kind == GermKind::Smooth) continue;
        InventoryEntry e;
        e.chart = lg.chart;
        e.point = lg.point;
        e.cls = cls;
        inv.entries.push_back(std::move(e));
    }
    for (auto& e : extra) inv.entries.push_back(e);
    inv.recompute_delta();
    return inv;
}

bool genus_budget_check(SingularityInventory& inv, const ComponentModel& model, int p_a) {
    inv.recompute_delta();
    int genus_sum = 0, comps = 0;
    for (auto& comp : model.components) {
        genus_sum += comp.orbit_size * comp.geometric_genus;
        comps += comp.orbit_size;
    }
    // branch counts, when supplied, must be consistent with the classes
    std::map<int, int> branch_sum;
    for (auto& inc : model.incidences) branch_sum[inc.entry] += inc.branches;
    for (auto& [idx, sum] : branch_sum) {
        if (idx < 0 || idx >= static_cast<int>(inv.entries.size()))
            throw structural_error("incidence references a missing inventory entry");
        if (sum != inv.entries[idx].cls.branches)
            throw structural_error("incidence branch counts disagree with the classifier");
    }
    bool ok = (genus_sum + inv.total_delta - comps + 1 == p_a);
    inv.certified_complete = ok;
    return ok;
}

bool separating_check(const SingularityInventory& inv, int entry_index,
                      const ComponentModel& model) {
    if (entry_index < 0 || entry_index >= static_cast<int>(inv.entries.size()))
        throw structural_error("entry index out of range");
    const auto& entry = inv.entries[entry_index];
    if (entry.cls.branches != 2)
        throw domain_error(domain_fault::precondition,
                           "separating test applies to two-branch singularities only");
    int n = static_cast<int>(model.components.size());
    for (auto& comp : model.components)
        if (comp.orbit_size != 1)
            throw domain_error(domain_fault::unsupported,
                               "separating test needs an orbit-free component model");
    // union-find over components, joining through every entry except the one
    // under test
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    std::map<int, std::vector<int>> touches;
    for (auto& inc : model.incidences)
        for (int rep = 0; rep < inc.branches; ++rep) touches[inc.entry].push_back(inc.component);
    for (auto& [e, comps] : touches) {
        if (e == entry_index) continue;
        for (size_t i = 1; i < comps.size(); ++i) unite(comps[0], comps[i]);
    }
    int cls0 = find(0);
    for (int i = 1; i < n; ++i)
        if (find(i) != cls0) return true;
    return false;
}

SingularityInventory weierstrass_singularities(const WeierstrassCurve& w) {
    SingularityInventory inv;
    if (w.f.is_zero())
        throw domain_error(domain_fault::ribbon_input,
                           "z^2 = 0 is a ribbon; no singularity inventory");
    if (w.f.total_degree() != 2 * w.g + 2)
        throw structural_error("binary form degree must be 2g+2");
    auto roots = binary_form_roots(w.f);
    for (auto& [pt, mult] : roots.rational) {
        if (mult < 2) continue;
        InventoryEntry e;
        e.cls = a_class(mult - 1);
        e.chart = "branch point";
        e.point = proj_normalize({pt[0], pt[1]}, {1, 1});
        inv.entries.push_back(std::move(e));
    }
    for (auto& [size, mult] : roots.conjugate_packets) {
        if (mult < 2) continue;
        InventoryEntry e;
        e.cls = a_class(mult - 1);
        e.chart = "branch orbit";
        e.orbit_size = size;
        e.note = "conjugate branch points";
        inv.entries.push_back(std::move(e));
    }
    inv.recompute_delta();
    ComponentModel model = weierstrass_component_model(w);
    genus_budget_check(inv, model, w.g);
    return inv;
}

ComponentModel weierstrass_component_model(const WeierstrassCurve& w) {
    if (w.f.is_zero())
        throw domain_error(domain_fault::ribbon_input, "ribbon has no reduced component model");
    auto sf = squarefree_factor(w.f);
    MPoly odd_part = MPoly::constant(w.f.vars(), 1);
    for (auto& [fac, mult] : sf)
        if (mult % 2 == 1) odd_part *= fac;
    int ds = odd_part.total_degree();
    ComponentModel model;
    if (ds > 0) {
        // irreducible double cover of P^1 branched at the odd-multiplicity roots
        ComponentInfo comp;
        comp.geometric_genus = ds / 2 - 1;
        comp.degree = 2 * w.g + 2; // as a weighted-plane divisor
        comp.label = "double cover";
        model.components.push_back(comp);
    } else {
        // z^2 = c q(x,y)^2: two rational sections, conjugate when c is not a square
        MPoly prod = MPoly::constant(w.f.vars(), 1);
        for (auto& [fac, mult] : sf) prod *= pow(fac, mult);
        Rational unit = divide_exact(w.f, prod).constant_value();
        bool rational_split = rational_sqrt_exact(unit).has_value();
        ComponentInfo comp;
        comp.geometric_genus = 0;
        comp.label = rational_split ? "section" : "conjugate sections";
        comp.orbit_size = rational_split ? 1 : 2;
        model.components.push_back(comp);
        if (rational_split) model.components.push_back(comp);
    }
    return model;
}

int component_space_degree(const CurveSpec& c, const MPoly& component) {
    if (std::holds_alternative<P1xP1Ambient>(c.ambient)) return component.total_degree();
    if (std::holds_alternative<WeightedPlaneAmbient>(c.ambient))
        return component.weighted_degree();
    throw domain_error(domain_fault::unsupported,
                       "component degrees for CI curves come from the component model");
}

WeierstrassCurve weierstrass_from_weighted_plane(const CurveSpec& c) {
    const auto& wp = std::get<WeightedPlaneAmbient>(c.ambient);
    int m = wp.weights[2];
    if (wp.weights[0] != 1 || wp.weights[1] != 1 || m < 2)
        throw domain_error(domain_fault::unsupported, "expected P(1,1,g+1)");
    auto vars = c.equation.vars();
    auto zc = c.equation.coeffs_in(2);
    if (zc.size() < 3 || !zc[2].is_constant() || zc[2].is_zero())
        throw domain_error(domain_fault::unsupported,
                           "equation is not quadratic in the weighted variable");
    if (zc.size() > 3)
        throw domain_error(domain_fault::unsupported, "degree in z exceeds 2");
    Rational a = zc[2].constant_value();
    MPoly p = zc.size() > 1 ? zc[1] : MPoly(vars);
    MPoly q = zc[0];
    // a z^2 + p z + q = 0  ==>  (z + p/2a)^2 = (p^2 - 4 a q) / 4a^2
    MPoly f4 = p * p - q * a * Rational(4);
    MPoly f = f4 * (Rational(1) / (a * a * Rational(4)));
    auto bt = binary_vars();
    std::map<int, MPoly> im{{0, MPoly::variable(bt, 0)}, {1, MPoly::variable(bt, 1)}};
    MPoly fb = f.substitute(im, bt);
    return WeierstrassCurve{m - 1, fb};
}

CurveStructure curve_structure(const CurveSpec& c, const std::vector<InventoryEntry>& extra) {
    CurveStructure s;
    if (std::holds_alternative<P1xP1Ambient>(c.ambient)) s.quadric_rank = 4;
    else if (std::holds_alternative<WeightedPlaneAmbient>(c.ambient)) s.quadric_rank = 3;
    else s.quadric_rank = quadric_rank(std::get<CIAmbient>(c.ambient).quadric);

    if (c.has_tag("ribbon")) {
        s.ribbon = true;
        s.reduced = false;
        return s;
    }

    if (std::holds_alternative<CIAmbient>(c.ambient) && s.quadric_rank == 2) {
        const auto& ci = std::get<CIAmbient>(c.ambient);
        auto norm = normalize_quadric(ci.quadric);
        auto zt = VarTable::make({"z0", "z1", "z2", "z3"});
        MPoly cz = apply_transform(ci.cubic, norm.transform, zt);
        auto d = split_two_planes(cz);
        auto tbl = table2("a", "b");
        std::map<int, MPoly> lim{{0, MPoly(tbl)},
                                 {1, MPoly::variable(tbl, 0)},
                                 {2, MPoly::variable(tbl, 1)},
                                 {3, MPoly(tbl)}};
        MPoly rest = d.on_line.substitute(lim, tbl);
        if (!rest.is_zero()) {
            auto sf = squarefree_factor(rest);
            bool squarefree =
                std::all_of(sf.begin(), sf.end(), [](const auto& p) { return p.second == 1; });
            s.triborough = squarefree && rest.total_degree() == 3;
        }
    }

    try {
        s.inventory = singularity_inventory(c, extra);
    } catch (const domain_error& e) {
        if (e.fault == domain_fault::non_reduced &&
            std::holds_alternative<CIAmbient>(c.ambient)) {
            // a non-reduced (2,3) complete intersection is a genus-4 ribbon
            s.ribbon = true;
            s.reduced = false;
            return s;
        }
        throw;
    }

    for (auto& e : s.inventory.entries)
        if (e.chart == "vertex") s.vertex_entry = e.cls;

    for (auto& [f, m] : c.components)
        s.component_degrees.push_back(component_space_degree(c, f));
    return s;
}

} // namespace g4

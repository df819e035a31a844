#include "germ.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>

namespace g4 {

GermClass smooth_class() {
    GermClass c;
    c.kind = GermKind::Smooth;
    c.mu = 0;
    c.delta = 0;
    c.branches = 1;
    c.multiplicity = 1;
    return c;
}

GermClass a_class(int k) {
    if (k < 1) throw structural_error("a_class: k must be >= 1");
    GermClass c;
    c.kind = GermKind::A;
    c.k = k;
    c.mu = k;
    c.delta = (k + 1) / 2;
    c.branches = (k % 2 == 1) ? 2 : 1;
    c.multiplicity = 2;
    return c;
}

GermClass d4_class() {
    GermClass c;
    c.kind = GermKind::D4;
    c.mu = 4;
    c.delta = 3;
    c.branches = 3;
    c.multiplicity = 3;
    return c;
}

std::string GermClass::label() const {
    switch (kind) {
    case GermKind::Smooth: return "smooth";
    case GermKind::A: return "A" + std::to_string(k);
    case GermKind::D4: return "D4";
    case GermKind::Other: return "other(mu=" + std::to_string(mu) + ")";
    }
    return "?";
}

namespace {

void require_plane(const MPoly& f) {
    if (!f.vars() || f.vars()->arity() != 2)
        throw structural_error("germ operations need a two-variable ring");
}

// Minimal total degree of a term.
int low_degree(const MPoly& f) {
    int d = -1;
    for (auto& [e, c] : f.terms()) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        d = (d < 0) ? s : std::min(d, s);
    }
    return d;
}

// Sum of the terms of minimal total degree.
MPoly tangent_cone(const MPoly& f) {
    int d = low_degree(f);
    MPoly t(f.vars());
    for (auto& [e, c] : f.terms())
        if (std::accumulate(e.begin(), e.end(), 0) == d)
            t += MPoly::monomial(f.vars(), e, c);
    return t;
}

} // namespace

int multiplicity(const Germ& g) {
    require_plane(g.f);
    MPoly ft = g.f.translate({g.base[0], g.base[1]});
    if (ft.is_zero())
        throw domain_error(domain_fault::zero_input, "multiplicity of the zero germ");
    return low_degree(ft);
}

LocalIntersection intersection_multiplicity(const MPoly& f, const MPoly& g,
                                            const std::vector<Rational>& p) {
    require_plane(f);
    require_plane(g);
    if (p.size() != 2) throw structural_error("intersection point needs two coordinates");
    auto vars = f.vars();
    MPoly a = f.translate({p[0], p[1]});
    MPoly b = g.translate({p[0], p[1]});
    std::vector<Rational> origin{Rational(0), Rational(0)};
    if (a.is_zero() || b.is_zero()) return {true, 0};
    if (a.eval(origin) != 0 || b.eval(origin) != 0) return {false, 0};
    MPoly h = gcd(a, b);
    if (!h.is_constant() && h.eval(origin) == 0) return {true, 0};

    const int X = 0, Y = 1;
    MPoly yvar = MPoly::variable(vars, Y);
    auto restrict_y0 = [&](const MPoly& q) {
        return as_univariate(q.substitute({{Y, MPoly(vars)}}, vars), X);
    };
    long total = 0;
    while (true) {
        if (a.eval(origin) != 0 || b.eval(origin) != 0)
            return {false, static_cast<int>(total)};
        UPoly ax = restrict_y0(a);
        UPoly bx = restrict_y0(b);
        if (ax.is_zero() && bx.is_zero())
            throw domain_error(domain_fault::inconsistent,
                               "both restrictions vanish despite coprimality at the point");
        if (ax.is_zero()) {
            total += bx.order_at_zero();
            a = divide_exact(a, yvar);
            continue;
        }
        if (bx.is_zero()) {
            total += ax.order_at_zero();
            b = divide_exact(b, yvar);
            continue;
        }
        if (ax.degree() < bx.degree()) {
            std::swap(a, b);
            std::swap(ax, bx);
        }
        // kill the top coefficient of a(x,0) using b
        int shift = ax.degree() - bx.degree();
        Rational s = ax.lead() / bx.lead();
        a -= MPoly::variable(vars, X, shift) * b * s;
    }
}

int milnor_number(const Germ& g) {
    require_plane(g.f);
    auto I = intersection_multiplicity(g.f.derivative(0), g.f.derivative(1), g.base);
    if (I.infinite)
        throw domain_error(domain_fault::non_isolated, "non-isolated singular point");
    return I.value;
}

namespace {

// One blow-up chart step at a rational tangent direction.  Directions are
// [1:c] (y = c x + ...) or [0:1] (the vertical tangent).
MPoly blow_up_once(const MPoly& ft, int mult, bool vertical, const Rational& c) {
    auto vars = ft.vars();
    MPoly result(vars);
    if (vertical) {
        // x = x' y  (strict transform in the chart around [0:1])
        MPoly img = MPoly::variable(vars, 0) * MPoly::variable(vars, 1);
        MPoly sub = ft.substitute({{0, img}}, vars);
        result = divide_exact(sub, MPoly::variable(vars, 1, mult));
    } else {
        // y = (y' + c) x
        MPoly img = (MPoly::variable(vars, 1) + MPoly::constant(vars, c)) *
                    MPoly::variable(vars, 0);
        MPoly sub = ft.substitute({{1, img}}, vars);
        result = divide_exact(sub, MPoly::variable(vars, 0, mult));
    }
    return result;
}

// Number of branches contributed by the germ upstairs of one blow-up,
// refined a single step only.
std::pair<int, bool> branches_upstairs(const MPoly& upstairs) {
    std::vector<Rational> origin{Rational(0), Rational(0)};
    if (upstairs.eval(origin) != 0) return {1, true}; // strict transform misses the center
    MPoly t = tangent_cone(upstairs);
    int m = low_degree(upstairs);
    if (m == 1) return {1, true};
    auto sf = squarefree_factor(t);
    bool simple = std::all_of(sf.begin(), sf.end(), [](const auto& p) { return p.second == 1; });
    int directions = 0;
    for (auto& [fac, mult] : sf) directions += fac.total_degree();
    return {directions, simple};
}

} // namespace

GermClass classify_germ(const Germ& g) {
    require_plane(g.f);
    auto vars = g.f.vars();
    MPoly ft = g.f.translate({g.base[0], g.base[1]});
    if (ft.is_zero())
        throw domain_error(domain_fault::zero_input, "classify_germ: zero polynomial");
    std::vector<Rational> origin{Rational(0), Rational(0)};
    if (ft.eval(origin) != 0)
        throw domain_error(domain_fault::precondition, "base point is not on the curve");

    MPoly rep = gcd(gcd(ft, ft.derivative(0)), ft.derivative(1));
    if (!rep.is_constant() && rep.eval(origin) == 0)
        throw domain_error(domain_fault::non_reduced,
                           "repeated component through the base point");

    int m = low_degree(ft);
    if (m == 1) return smooth_class();

    Germ at0 = Germ::at_origin(ft);
    int mu = milnor_number(at0);

    if (m == 2) return a_class(mu);

    MPoly cone = tangent_cone(ft);
    auto sf = squarefree_factor(cone);
    bool cone_squarefree =
        std::all_of(sf.begin(), sf.end(), [](const auto& p) { return p.second == 1; });

    if (m == 3 && cone_squarefree) {
        GermClass d = d4_class();
        if (mu != 4)
            throw domain_error(domain_fault::inconsistent,
                               "ordinary triple point with mu != 4");
        return d;
    }

    GermClass other;
    other.kind = GermKind::Other;
    other.mu = mu;
    other.multiplicity = m;
    for (auto& [fac, mult] : sf)
        other.tangent_cone_shape.emplace_back(fac.total_degree(), mult);

    int branches = 0;
    bool exact = true;
    for (auto& [fac, mult] : sf) {
        int deg = fac.total_degree();
        if (mult == 1) {
            // simple directions carry exactly one smooth branch each
            branches += deg;
            continue;
        }
        // multiplicity >= 2: refine rational directions by one blow-up.
        // squarefree_factor splits pure x- and y-powers into their own
        // factors, so [0:1] is a direction of `fac` only when fac ~ x.
        int rational_dirs = 0;
        if (deg == 1 && fac.coeff_of({{0, 1}}) != 0 && fac.coeff_of({{1, 1}}) == 0) {
            auto up = blow_up_once(ft, m, true, Rational(0));
            auto [n, ex] = branches_upstairs(up);
            branches += n;
            exact = exact && ex;
            ++rational_dirs;
        } else {
            // directions [1:c] with fac(1,c) = 0, i.e. tangent lines y = c x
            UPoly u = as_univariate(
                fac.substitute({{0, MPoly::constant(vars, 1)}}, vars), 1);
            for (auto& [root, rm] : rational_roots(u)) {
                (void)rm;
                auto up = blow_up_once(ft, m, false, root);
                auto [n, ex] = branches_upstairs(up);
                branches += n;
                exact = exact && ex;
                ++rational_dirs;
            }
        }
        int irrational = deg - rational_dirs;
        if (irrational > 0) {
            branches += irrational; // one per direction, unrefined
            exact = false;
        }
    }
    other.branches = std::max(branches, 1);
    other.branches_exact = exact;
    // mu = 2*delta - r + 1 determines delta when the branch count is exact
    if (exact) {
        if ((mu + other.branches - 1) % 2 != 0)
            throw domain_error(domain_fault::inconsistent,
                               "mu and branch count have incompatible parity");
        other.delta = (mu + other.branches - 1) / 2;
    } else {
        other.delta = (mu + other.branches - 1) / 2; // lower bound, flagged
    }
    return other;
}

GermClass classify_vertex(const Germ& cover) {
    require_plane(cover.f);
    if (!(cover.base[0] == 0 && cover.base[1] == 0))
        throw structural_error("vertex cover germ must sit at the origin");
    if (cover.f.is_zero())
        throw domain_error(domain_fault::zero_input, "classify_vertex: zero polynomial");
    bool all_even = true, all_odd = true;
    for (auto& [e, c] : cover.f.terms()) {
        int d = e[0] + e[1];
        if (d % 2 == 0) all_odd = false;
        else all_even = false;
    }
    if (!all_even && !all_odd)
        throw domain_error(domain_fault::precondition,
                           "covering germ is not mu_2 semi-invariant");

    GermClass c = classify_germ(cover);
    switch (c.kind) {
    case GermKind::Smooth:
        return smooth_class();
    case GermKind::A:
        if (c.k % 2 == 0)
            throw domain_error(domain_fault::inconsistent,
                               "semi-invariant multiplicity-2 cover of even A-type");
        return a_class((c.k + 1) / 2);
    default:
        throw domain_error(domain_fault::precondition,
                           "covering germ is neither smooth nor of A-type");
    }
}

} // namespace g4

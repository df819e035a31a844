#pragma once

#include "mpoly.hpp"

#include <string>
#include <vector>

namespace g4 {

// Plane-curve germ: a nonzero polynomial in a two-variable ring together
// with a rational base point lying on the curve.
struct Germ {
    MPoly f;
    std::vector<Rational> base; // two coordinates

    Germ(MPoly poly, std::vector<Rational> at) : f(std::move(poly)), base(std::move(at)) {}
    static Germ at_origin(MPoly poly) { return Germ(std::move(poly), {Rational(0), Rational(0)}); }
};

enum class GermKind { Smooth, A, D4, Other };

struct GermClass {
    GermKind kind = GermKind::Smooth;
    int k = 0; // for A(k)
    int mu = 0;
    int delta = 0;
    int branches = 1;
    int multiplicity = 1;
    // For Other with tangent directions that cannot be separated over Q,
    // `branches` (and the delta derived from it) is a lower bound.
    bool branches_exact = true;
    // (degree, multiplicity) of the squarefree decomposition of the tangent
    // cone; recorded for Other only.
    std::vector<std::pair<int, int>> tangent_cone_shape;

    std::string label() const;
    bool operator==(const GermClass& o) const {
        return kind == o.kind && k == o.k && mu == o.mu && delta == o.delta &&
               branches == o.branches && multiplicity == o.multiplicity;
    }
};

GermClass smooth_class();
GermClass a_class(int k);
GermClass d4_class();

// Local intersection number; infinite iff the curves share a component
// through the point.
struct LocalIntersection {
    bool infinite = false;
    int value = 0;
};

int multiplicity(const Germ& g);

LocalIntersection intersection_multiplicity(const MPoly& f, const MPoly& g,
                                            const std::vector<Rational>& p);

// mu = I(base; df/dx, df/dy).  Throws NonIsolated when infinite.
int milnor_number(const Germ& g);

// Classifier for the germ types used here: Smooth, A(k) (all finite k),
// D4 (ordinary triple point), Other.  Requires a reduced germ.
GermClass classify_germ(const Germ& g);

// Germ at the vertex of P(1,1,2), given by the mu_2-semi-invariant covering
// germ at the origin.  Smooth covers stay smooth; an A(2k-1) cover descends
// to A(k).
GermClass classify_vertex(const Germ& cover);

} // namespace g4

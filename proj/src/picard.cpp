#include "picard.hpp"

#include "errors.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace g4 {

DivClass DivClass::operator+(const DivClass& o) const {
    return {lambda + o.lambda, d0 + o.d0, d1 + o.d1, d2 + o.d2};
}

DivClass DivClass::operator-(const DivClass& o) const {
    return {lambda - o.lambda, d0 - o.d0, d1 - o.d1, d2 - o.d2};
}

DivClass DivClass::operator*(const Rational& c) const {
    return {lambda * c, d0 * c, d1 * c, d2 * c};
}

bool DivClass::operator==(const DivClass& o) const {
    return lambda == o.lambda && d0 == o.d0 && d1 == o.d1 && d2 == o.d2;
}

std::string DivClass::str() const {
    std::ostringstream os;
    os << to_string(lambda) << "λ";
    auto piece = [&](const Rational& c, const char* name) {
        if (c < 0) os << " - " << to_string(-c) << " " << name;
        else os << " + " << to_string(c) << " " << name;
    };
    piece(d0, "δ0");
    piece(d1, "δ1");
    piece(d2, "δ2");
    return os.str();
}

DivClass lambda_class() { return {1, 0, 0, 0}; }

DivClass delta_class(int i) {
    switch (i) {
    case 0: return {0, 1, 0, 0};
    case 1: return {0, 0, 1, 0};
    case 2: return {0, 0, 0, 1};
    }
    throw structural_error("delta index must be 0, 1 or 2");
}

DivClass canonical_class() { return {13, -2, -2, -2}; }

DivClass hk_divisor(const Rational& alpha) {
    return {13, alpha - 2, alpha - 2, alpha - 2};
}

DivClass L_alpha(const Rational& alpha) {
    if (alpha <= Rational(5, 9) || alpha >= Rational(2, 3))
        throw domain_error(domain_fault::out_of_range,
                           "the polarization is defined for alpha in (5/9, 2/3)");
    if (alpha <= Rational(19, 29)) return {13, -(2 - alpha), 0, 0};
    return {13, -(2 - alpha), 0, -(2 - alpha)};
}

DivClass L_alpha_tag(const std::string& t) {
    if (t == "2/3-eps") {
        Rational a(2, 3);
        return {13, -(2 - a), 0, -(2 - a)};
    }
    throw domain_error(domain_fault::out_of_range, "unknown polarization tag " + t);
}

DivClass vgit_pullback(const VgitPolarizationParams& p) {
    Rational s;
    if (p.s) {
        s = *p.s;
        if (p.t && *p.t * s != 1)
            throw structural_error("inconsistent parameters: s t != 1");
    } else if (p.t) {
        if (*p.t == 0) throw domain_error(domain_fault::pole, "t = 0 has no slope parameter s");
        s = Rational(1) / *p.t;
    } else {
        throw structural_error("no polarization parameter given");
    }
    return {34 * s - 33, -(4 * s - 4), -(14 * s - 15), -(18 * s - 21)};
}

Rational t_of_alpha(const Rational& alpha) {
    Rational den = 33 * alpha - 14;
    if (den == 0)
        throw domain_error(domain_fault::pole, "alpha = 14/33 is the pole of the slope map");
    return (34 * alpha - 16) / den;
}

Rational alpha_of_t(const Rational& t) {
    Rational den = 33 * t - 34;
    if (den == 0)
        throw domain_error(domain_fault::pole, "t = 34/33 is the pole of the inverse slope map");
    return (14 * t - 16) / den;
}

std::vector<WallRecord> walls() {
    return {
        {1, Rational(9, 11), "elliptic tails", "A2"},
        {2, Rational(7, 10), "elliptic bridges", "A3"},
        {3, Rational(2, 3), "genus two tails attached at a Weierstrass point", "A4"},
        {4, Rational(19, 29), "delta_2, i.e. general genus two tails", "A5^sep"},
        {5, Rational(5, 9), "tacnodal curves glued at conjugate points", "A5^nsep"},
        {5, Rational(5, 9), "hyperelliptic curves", "A6, A7^nsep, A8, A9"},
        {5, Rational(5, 9), "elliptic triboroughs", "D4"},
        {6, Rational(23, 44), "cuspidal curves with hyperelliptic normalization", "A7^sep"},
        {7, Rational(1, 2), "nodal curves with hyperelliptic normalization",
         "double conic + transversal conic"},
        {8, Rational(29, 60), "Gieseker-Petri divisor", "triple conic"},
        {9, Rational(8, 17), "everything", "terminal model"},
    };
}

// ---------------------------------------------------------------------------
// Rational functions.

RatFunc RatFunc::zero() { return {UPoly(), UPoly::constant(Rational(1))}; }

RatFunc RatFunc::constant(const Rational& c) {
    return {UPoly::constant(c), UPoly::constant(Rational(1))};
}

RatFunc RatFunc::variable() {
    return {UPoly{std::vector<Rational>{Rational(0), Rational(1)}},
            UPoly::constant(Rational(1))};
}

RatFunc RatFunc::of(UPoly n, UPoly d) {
    if (d.is_zero()) throw structural_error("rational function with zero denominator");
    if (n.is_zero()) return zero();
    UPoly g = gcd(n, d);
    if (g.degree() > 0) {
        n = divmod(n, g).first;
        d = divmod(d, g).first;
    }
    Rational lead = d.lead();
    UPoly nn = (Rational(1) / lead) * n;
    UPoly dd = (Rational(1) / lead) * d;
    return {nn, dd};
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return of(num * o.den + o.num * den, den * o.den);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return of(num * o.den - o.num * den, den * o.den);
}

RatFunc RatFunc::operator*(const RatFunc& o) const { return of(num * o.num, den * o.den); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw structural_error("division by the zero rational function");
    return of(num * o.den, den * o.num);
}

std::string RatFunc::str() const {
    auto upoly_str = [](const UPoly& p) {
        if (p.is_zero()) return std::string("0");
        std::ostringstream os;
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            if (p.c[i] == 0) continue;
            if (!first) os << (p.c[i] < 0 ? " - " : " + ");
            else if (p.c[i] < 0) os << "-";
            Rational a = p.c[i] < 0 ? -p.c[i] : p.c[i];
            if (a != 1 || i == 0) os << to_string(a);
            if (i >= 1) {
                if (a != 1) os << "*";
                os << "e";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    };
    if (den == UPoly::constant(Rational(1))) return upoly_str(num);
    return "(" + upoly_str(num) + ")/(" + upoly_str(den) + ")";
}

// ---------------------------------------------------------------------------
// Identity verification.

namespace {

// 4-vectors of rational functions for the symbolic identities.
struct RFClass {
    std::array<RatFunc, 4> c;

    static RFClass of(const DivClass& d) {
        return {{RatFunc::constant(d.lambda), RatFunc::constant(d.d0),
                 RatFunc::constant(d.d1), RatFunc::constant(d.d2)}};
    }
    RFClass operator+(const RFClass& o) const {
        RFClass r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    RFClass operator-(const RFClass& o) const {
        RFClass r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    RFClass scale(const RatFunc& f) const {
        RFClass r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] * f;
        return r;
    }
    bool operator==(const RFClass& o) const {
        for (int i = 0; i < 4; ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }
    std::string str() const {
        return "(" + c[0].str() + ", " + c[1].str() + ", " + c[2].str() + ", " + c[3].str() +
               ")";
    }
};

void push(IdentityReport& rep, const std::string& id, bool ok, const std::string& lhs,
          const std::string& rhs) {
    rep.items.push_back({id, ok, lhs, rhs});
}

} // namespace

bool IdentityReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

const IdentityReport::Item* IdentityReport::find(const std::string& id) const {
    for (auto& i : items)
        if (i.id == id) return &i;
    return nullptr;
}

IdentityReport verify_identities() {
    IdentityReport rep;

    const DivClass nef_part{9, -1, 0, -3};            // the pulled-back polarization
    const DivClass L23 = L_alpha_tag("2/3-eps");      // 13l - 4/3 (d0 + d2)
    const DivClass Lplus{13, Rational(-39, 29), 0, Rational(-39, 29)};

    // (i) the nef combination
    {
        DivClass lhs = nef_part * Rational(1, 3) + L23 * 2;
        DivClass mid{29, -3, 0, Rational(-11, 3)};
        DivClass rhs = Lplus * Rational(29, 13) - delta_class(2) * Rational(2, 3);
        push(rep, "nef-combination", lhs == mid && rhs == mid, lhs.str(), rhs.str());
    }

    // (ii) the ample combination, as an identity of rational functions in eps
    {
        RatFunc e = RatFunc::variable();
        RatFunc one = RatFunc::constant(1);
        RatFunc a = (one - RatFunc::constant(87) * e) /
                    (RatFunc::constant(3) * (one - RatFunc::constant(9) * e));
        RatFunc b = RatFunc::constant(2) / (one - RatFunc::constant(9) * e);
        // L_{2/3 - eps} = 13 l - (4/3 + eps)(d0 + d2)
        RFClass Leps;
        Leps.c[0] = RatFunc::constant(13);
        Leps.c[1] = (RatFunc::constant(Rational(-4, 3)) - e);
        Leps.c[2] = RatFunc::zero();
        Leps.c[3] = Leps.c[1];
        RFClass lhs = RFClass::of(nef_part).scale(a) + Leps.scale(b);
        RFClass rhs = RFClass::of(Lplus).scale(RatFunc::constant(Rational(29, 13))) -
                      RFClass::of(delta_class(2)).scale(RatFunc::constant(2) * a);
        push(rep, "ample-combination-eps", lhs == rhs, lhs.str(), rhs.str());
    }

    // (iii) the contraction pullback: solve the 2x2 system
    //   9 jl - jd0 = (9,-1,0,-3),  29 jl - 3 jd0 = (29,-3,0,-3)
    {
        DivClass r1{9, -1, 0, -3};
        DivClass r2{29, -3, 0, -3};
        // determinant of [[9,-1],[29,-3]] is 2
        DivClass jl = (r1 * Rational(-3) - r2 * Rational(-1)) * Rational(1, 2);
        DivClass jd0 = (r2 * Rational(9) - r1 * Rational(29)) * Rational(1, 2);
        DivClass want_l = lambda_class() + delta_class(2) * 3;
        DivClass want_d0 = delta_class(0) + delta_class(2) * 30;
        bool ok = (jl == want_l) && (jd0 == want_d0);
        push(rep, "contraction-pullback-solve", ok,
             "j*λ = " + jl.str() + "; j*δ0 = " + jd0.str(),
             "λ' + 3δ2'; δ0' + 30δ2'");
    }

    // (iv) the log-canonical decomposition, symbolically in alpha
    {
        RatFunc al = RatFunc::variable();
        RatFunc two_minus = RatFunc::constant(2) - al;
        // (a) expanding the pullback of the low-chamber polarization
        RFClass jl = RFClass::of(lambda_class() + delta_class(2) * 3);
        RFClass jd0 = RFClass::of(delta_class(0) + delta_class(2) * 30);
        RFClass lhs = jl.scale(RatFunc::constant(13)) - jd0.scale(two_minus);
        RFClass rhs;
        rhs.c[0] = RatFunc::constant(13);
        rhs.c[1] = RatFunc::zero() - two_minus;
        rhs.c[2] = RatFunc::zero();
        rhs.c[3] = (RatFunc::zero() - two_minus) -
                   (RatFunc::constant(19) - RatFunc::constant(29) * al);
        bool ok_a = (lhs == rhs);
        push(rep, "pullback-expansion", ok_a, lhs.str(), rhs.str());
        // (b) pushforward consistency in both chamber shapes
        RFClass hk;
        hk.c[0] = RatFunc::constant(13);
        hk.c[1] = al - RatFunc::constant(2);
        hk.c[2] = hk.c[1];
        hk.c[3] = hk.c[1];
        RFClass push_low = hk; // delta1 and delta2 contracted
        push_low.c[2] = RatFunc::zero();
        push_low.c[3] = RatFunc::zero();
        RFClass L_low;
        L_low.c[0] = RatFunc::constant(13);
        L_low.c[1] = RatFunc::zero() - two_minus;
        L_low.c[2] = RatFunc::zero();
        L_low.c[3] = RatFunc::zero();
        RFClass push_high = hk; // only delta1 contracted
        push_high.c[2] = RatFunc::zero();
        RFClass L_high = L_low;
        L_high.c[3] = RatFunc::zero() - two_minus;
        bool ok_b = (push_low == L_low) && (push_high == L_high);
        push(rep, "pushforward-consistency", ok_b, push_low.str() + "; " + push_high.str(),
             L_low.str() + "; " + L_high.str());
        // (c) the correction coefficients vanish exactly at the walls
        UPoly c19{std::vector<Rational>{Rational(19), Rational(-29)}};
        UPoly c9{std::vector<Rational>{Rational(9), Rational(-11)}};
        bool ok_c = (c19.eval(Rational(19, 29)) == 0) && (c9.eval(Rational(9, 11)) == 0) &&
                    (c19.eval(Rational(1, 2)) != 0) && (c9.eval(Rational(1, 2)) != 0) &&
                    c19.degree() == 1 && c9.degree() == 1;
        push(rep, "wall-vanishing", ok_c, "19-29α vanishes at 19/29; 9-11α at 9/11",
             "unique simple roots");
    }

    // (v) the polarization proportionality at s = 17/14
    {
        DivClass pulled = vgit_pullback({Rational(17, 14), std::nullopt});
        DivClass restricted{pulled.lambda, pulled.d0, 0, pulled.d2};
        DivClass rhs = Lplus * Rational(58, 91);
        push(rep, "vgit-polarization-proportionality", restricted == rhs, restricted.str(),
             rhs.str());
        DivClass at32 = vgit_pullback({Rational(3, 2), std::nullopt});
        DivClass expected32{18, -2, -6, -6};
        push(rep, "vgit-chow-polarization", at32 == expected32, at32.str(), expected32.str());
    }

    return rep;
}

} // namespace g4

#include "mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace g4 {

// ---------------------------------------------------------------------------
// VarTable

VarTablePtr VarTable::make(std::vector<std::string> names, std::vector<int> weights) {
    if (weights.empty()) weights.assign(names.size(), 1);
    if (weights.size() != names.size())
        throw structural_error("VarTable: names and weights differ in length");
    for (int w : weights)
        if (w < 1) throw structural_error("VarTable: weights must be >= 1");
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw structural_error("VarTable: duplicate variable name " + names[i]);
    return VarTablePtr(new VarTable(std::move(names), std::move(weights)));
}

std::optional<int> VarTable::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    // within a degree, earlier variables dominate: higher exponent = larger
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// ---------------------------------------------------------------------------
// MPoly basics

MPoly MPoly::constant(VarTablePtr vars, const Rational& c) {
    MPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace(Exponents(p.vars_->arity(), 0), c);
    return p;
}

MPoly MPoly::variable(VarTablePtr vars, int index, int power) {
    if (index < 0 || index >= vars->arity())
        throw structural_error("MPoly::variable: index out of range");
    if (power < 0) throw structural_error("MPoly::variable: negative power");
    MPoly p(std::move(vars));
    Exponents e(p.vars_->arity(), 0);
    e[index] = power;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

MPoly MPoly::monomial(VarTablePtr vars, Exponents e, const Rational& c) {
    if (static_cast<int>(e.size()) != vars->arity())
        throw structural_error("MPoly::monomial: exponent vector length mismatch");
    for (int x : e)
        if (x < 0) throw structural_error("MPoly::monomial: negative exponent");
    MPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw structural_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

Rational MPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MPoly::coeff_of(const std::map<int, int>& e) const {
    Exponents v(vars_->arity(), 0);
    for (auto& [i, k] : e) v.at(i) = k;
    return coeff(v);
}

int MPoly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

int MPoly::degree_in(int var) const {
    int d = is_zero() ? -1 : 0;
    for (auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return is_zero() ? -1 : d;
}

int MPoly::weighted_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
        int w = 0;
        for (int i = 0; i < vars_->arity(); ++i) w += vars_->weight(i) * e[i];
        d = std::max(d, w);
    }
    return d;
}

int MPoly::low_weighted_degree() const {
    if (is_zero()) return -1;
    int d = -1;
    for (auto& [e, c] : terms_) {
        int w = 0;
        for (int i = 0; i < vars_->arity(); ++i) w += vars_->weight(i) * e[i];
        d = (d < 0) ? w : std::min(d, w);
    }
    return d;
}

bool MPoly::is_homogeneous(int* deg) const {
    if (is_zero()) { if (deg) *deg = -1; return true; }
    int d = -1;
    for (auto& [e, c] : terms_) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        if (d < 0) d = s;
        else if (d != s) return false;
    }
    if (deg) *deg = d;
    return true;
}

bool MPoly::is_weighted_homogeneous(int* deg) const {
    if (is_zero()) { if (deg) *deg = -1; return true; }
    int d = -1;
    for (auto& [e, c] : terms_) {
        int s = 0;
        for (int i = 0; i < vars_->arity(); ++i) s += vars_->weight(i) * e[i];
        if (d < 0) d = s;
        else if (d != s) return false;
    }
    if (deg) *deg = d;
    return true;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void MPoly::require_same_table(const MPoly& o) const {
    if (!vars_ || !o.vars_ || !vars_->same_as(*o.vars_))
        throw structural_error("operands live in different polynomial rings");
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    require_same_table(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    require_same_table(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }

MPoly operator*(const MPoly& a, const MPoly& b) {
    a.require_same_table(b);
    MPoly r(a.vars_);
    const int n = a.vars_->arity();
    Exponents e(n);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly operator*(const Rational& c, MPoly a) { a *= c; return a; }
MPoly operator*(MPoly a, const Rational& c) { a *= c; return a; }

bool operator==(const MPoly& a, const MPoly& b) {
    if (!a.vars() || !b.vars()) return a.is_zero() && b.is_zero();
    if (!a.vars()->same_as(*b.vars())) return false;
    return a.terms() == b.terms();
}

MPoly pow(const MPoly& a, int n) {
    if (n < 0) throw structural_error("pow: negative exponent");
    MPoly r = MPoly::constant(a.vars(), 1);
    MPoly base = a;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

MPoly MPoly::derivative(int var) const {
    if (var < 0 || var >= vars_->arity())
        throw structural_error("derivative: variable index out of range");
    MPoly r(vars_);
    for (auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * e[var]);
    }
    return r;
}

std::map<int, MPoly> MPoly::weighted_components() const {
    std::map<int, MPoly> out;
    for (auto& [e, c] : terms_) {
        int w = 0;
        for (int i = 0; i < vars_->arity(); ++i) w += vars_->weight(i) * e[i];
        auto it = out.find(w);
        if (it == out.end()) it = out.emplace(w, MPoly(vars_)).first;
        it->second.add_term(e, c);
    }
    return out;
}

MPoly MPoly::substitute(const std::map<int, MPoly>& images, const VarTablePtr& target) const {
    // Resolve the image of every variable of this ring.
    std::vector<MPoly> img(vars_->arity());
    for (int i = 0; i < vars_->arity(); ++i) {
        auto it = images.find(i);
        if (it != images.end()) {
            if (!it->second.vars()->same_as(*target))
                throw structural_error("substitute: image of " + vars_->name(i) +
                                       " does not live in the target ring");
            img[i] = it->second;
        } else if (uses_var(i)) {
            auto j = target->index_of(vars_->name(i));
            if (!j)
                throw structural_error("substitute: unbound variable " + vars_->name(i) +
                                       " has no counterpart in the target ring");
            img[i] = MPoly::variable(target, *j);
        }
    }
    // Expansion with cached powers per variable.
    std::vector<std::vector<MPoly>> powers(vars_->arity());
    auto power_of = [&](int v, int k) -> const MPoly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(MPoly::constant(target, 1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * img[v]);
        return cache[k];
    };
    MPoly out(target);
    for (auto& [e, c] : terms_) {
        MPoly term = MPoly::constant(target, c);
        for (int v = 0; v < vars_->arity(); ++v)
            if (e[v] > 0) term *= power_of(v, e[v]);
        out += term;
    }
    return out;
}

MPoly MPoly::substitute_names(const std::map<std::string, MPoly>& images,
                              const VarTablePtr& target) const {
    std::map<int, MPoly> byidx;
    for (auto& [name, im] : images) {
        auto i = vars_->index_of(name);
        if (!i) throw structural_error("substitute: " + name + " is not a variable of this ring");
        byidx.emplace(*i, im);
    }
    return substitute(byidx, target);
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != vars_->arity())
        throw structural_error("eval: wrong number of coordinates");
    Rational out(0);
    for (auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < vars_->arity(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        out += t;
    }
    return out;
}

MPoly MPoly::translate(const std::vector<Rational>& shift) const {
    if (static_cast<int>(shift.size()) != vars_->arity())
        throw structural_error("translate: wrong number of coordinates");
    std::map<int, MPoly> images;
    for (int i = 0; i < vars_->arity(); ++i) {
        if (shift[i] == 0) continue;
        images.emplace(i, MPoly::variable(vars_, i) + MPoly::constant(vars_, shift[i]));
    }
    return substitute(images, vars_);
}

MPoly MPoly::linear_change(const std::vector<std::vector<Rational>>& m) const {
    const int n = vars_->arity();
    if (static_cast<int>(m.size()) != n)
        throw structural_error("linear_change: matrix size mismatch");
    std::map<int, MPoly> images;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(m[i].size()) != n)
            throw structural_error("linear_change: matrix size mismatch");
        MPoly im(vars_);
        for (int j = 0; j < n; ++j)
            if (m[i][j] != 0) im += MPoly::variable(vars_, j) * m[i][j];
        images.emplace(i, std::move(im));
    }
    return substitute(images, vars_);
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
    int d = std::max(degree_in(var), 0);
    std::vector<MPoly> out(static_cast<size_t>(d) + 1, MPoly(vars_));
    for (auto& [e, c] : terms_) {
        Exponents e2 = e;
        int k = e2[var];
        e2[var] = 0;
        out[k].add_term(e2, c);
    }
    return out;
}

MPoly MPoly::from_coeffs_in(int var, const std::vector<MPoly>& coeffs) {
    if (coeffs.empty()) throw structural_error("from_coeffs_in: empty");
    MPoly out(coeffs.front().vars());
    for (size_t k = 0; k < coeffs.size(); ++k)
        out += coeffs[k] * MPoly::variable(out.vars(), var, static_cast<int>(k));
    return out;
}

std::string MPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest graded-lex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        bool coeff_shown = false;
        if (!any_var || a != 1) {
            os << to_string(a);
            coeff_shown = true;
        }
        bool first_var = true;
        for (int i = 0; i < vars_->arity(); ++i) {
            if (e[i] == 0) continue;
            if (coeff_shown || !first_var) os << "*";
            os << vars_->name(i);
            if (e[i] > 1) os << "^" << e[i];
            first_var = false;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Exact division

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw structural_error("division by the zero polynomial");
    if (a.is_zero()) return MPoly(a.vars());
    if (!a.vars()->same_as(*b.vars()))
        throw structural_error("operands live in different polynomial rings");
    MPoly r = a;
    MPoly q(a.vars());
    const auto& blead = *b.terms().rbegin();
    const int n = a.vars()->arity();
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().rbegin();
        Exponents e(n);
        for (int i = 0; i < n; ++i) {
            e[i] = rlead.first[i] - blead.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        MPoly t = MPoly::monomial(a.vars(), e, rlead.second / blead.second);
        q += t;
        r -= t * b;
    }
    return q;
}

MPoly divide_exact(const MPoly& a, const MPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw structural_error("exact division failed");
    return *q;
}

// ---------------------------------------------------------------------------
// Gcd over Q[x_1..x_n] via contents and a primitive pseudo-remainder sequence.

namespace {

// Rational-content normalization: primitive over Z, positive leading coeff.
MPoly normalize_primitive(const MPoly& f) {
    if (f.is_zero()) return f;
    Integer num_gcd = 0, den_lcm = 1;
    for (auto& [e, c] : f.terms()) {
        num_gcd = boost::multiprecision::gcd(num_gcd, num(c));
        den_lcm = boost::multiprecision::lcm(den_lcm, den(c));
    }
    Rational scale(den_lcm, num_gcd);
    MPoly out = f * scale;
    if (out.terms().rbegin()->second < 0) out *= Rational(-1);
    return out;
}

int top_var(const MPoly& f) {
    for (int v = f.vars()->arity() - 1; v >= 0; --v)
        if (f.uses_var(v)) return v;
    return -1;
}

// Pseudo-remainder of a by b with respect to var.  Scaled by powers of
// lc_v(b); only used inside primitive PRS where overall content is stripped.
MPoly pseudo_rem(const MPoly& a, const MPoly& b, int var) {
    auto ac = a.coeffs_in(var);
    auto bc = b.coeffs_in(var);
    int db = static_cast<int>(bc.size()) - 1;
    const MPoly& lb = bc.back();
    std::vector<MPoly> r = ac;
    auto trim = [&] {
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    };
    trim();
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        int k = static_cast<int>(r.size()) - 1;
        MPoly top = r[k];
        for (auto& ri : r) ri = ri * lb;
        // subtract top * v^(k-db) * b
        for (int j = 0; j <= db; ++j) r[k - db + j] -= top * bc[j];
        trim();
    }
    if (r.empty()) return MPoly(a.vars());
    return MPoly::from_coeffs_in(var, r);
}

MPoly gcd_impl(MPoly a, MPoly b);

// Gcd of the coefficient list (recursive content).
MPoly content_of(const std::vector<MPoly>& cs) {
    MPoly g = MPoly(cs.front().vars());
    for (const auto& c : cs) g = gcd_impl(g, c);
    return g;
}

MPoly gcd_impl(MPoly a, MPoly b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    if (a.is_constant() || b.is_constant())
        return MPoly::constant(a.vars(), 1);
    int v = std::max(top_var(a), top_var(b));
    auto ac = a.coeffs_in(v), bc = b.coeffs_in(v);
    MPoly ca = content_of(ac), cb = content_of(bc);
    MPoly cont = gcd_impl(ca, cb);
    MPoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
    // primitive PRS in variable v
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        MPoly r = pseudo_rem(pa, pb, v);
        pa = pb;
        if (r.is_zero()) { pb = MPoly(a.vars()); break; }
        pb = divide_exact(r, content_of(r.coeffs_in(v)));
        pb = normalize_primitive(pb);
    }
    // pa is the primitive gcd up to content in v
    pa = divide_exact(pa, content_of(pa.coeffs_in(v)));
    return normalize_primitive(cont * pa);
}

} // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (!a.vars()->same_as(*b.vars()))
        throw structural_error("gcd: operands live in different polynomial rings");
    return gcd_impl(a, b);
}

// ---------------------------------------------------------------------------
// Univariate dense polynomials

UPoly UPoly::constant(const Rational& v) {
    UPoly p;
    if (v != 0) p.c = {v};
    return p;
}

void UPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

UPoly UPoly::derivative() const {
    UPoly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rational(static_cast<int>(i)));
    d.trim();
    return d;
}

int UPoly::order_at_zero() const {
    if (is_zero()) throw domain_error(domain_fault::zero_input, "order of the zero polynomial");
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int>(i);
    return 0;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly nb = b;
    for (auto& x : nb.c) x = -x;
    return a + nb;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    UPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

UPoly operator*(const Rational& s, const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
}

bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw structural_error("univariate division by zero");
    UPoly r = a, q;
    if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rational s = r.lead() / b.lead();
        q.c[k] = s;
        for (int i = 0; i <= b.degree(); ++i) r.c[k + i] -= s * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

UPoly make_monic(UPoly a) {
    if (a.is_zero()) return a;
    Rational inv = Rational(1) / a.lead();
    for (auto& x : a.c) x *= inv;
    return a;
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

int order_at(const UPoly& f, const Rational& a) {
    if (f.is_zero()) throw domain_error(domain_fault::zero_input, "order of the zero polynomial");
    UPoly g = f;
    UPoly lin{std::vector<Rational>{-a, Rational(1)}};
    int k = 0;
    while (true) {
        auto [q, r] = divmod(g, lin);
        if (!r.is_zero()) return k;
        ++k;
        g = q;
        if (g.is_zero()) return k;
    }
}

std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    if (n == 0) throw structural_error("divisors of zero");
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& f) {
    if (f.is_zero()) throw domain_error(domain_fault::zero_input, "roots of the zero polynomial");
    std::vector<std::pair<Rational, int>> out;
    UPoly g = f;
    int k0 = g.order_at_zero();
    if (k0 > 0) {
        out.emplace_back(Rational(0), k0);
        g.c.erase(g.c.begin(), g.c.begin() + k0);
    }
    if (g.degree() < 1) return out;
    // clear denominators to a primitive integer polynomial
    Integer den_lcm = 1;
    for (auto& c : g.c) den_lcm = boost::multiprecision::lcm(den_lcm, den(c));
    std::vector<Integer> zc;
    for (auto& c : g.c) zc.push_back(num(c * Rational(den_lcm)));
    Integer content = 0;
    for (auto& z : zc) content = boost::multiprecision::gcd(content, z);
    for (auto& z : zc) z /= content;
    auto p_divs = divisors(zc.front());
    auto q_divs = divisors(zc.back());
    for (const auto& p : p_divs)
        for (const auto& q : q_divs) {
            if (boost::multiprecision::gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rational cand(sign * p, q);
                if (g.eval(cand) == 0) {
                    int m = order_at(g, cand);
                    out.emplace_back(cand, m);
                }
            }
        }
    // dedupe (a candidate can be generated multiple ways only via gcd filter,
    // so pairs are unique; still sort for determinism)
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    return out;
}

UPoly as_univariate(const MPoly& f, int var) {
    UPoly u;
    u.c.assign(static_cast<size_t>(std::max(f.degree_in(var), 0)) + 1, Rational(0));
    for (auto& [e, c] : f.terms()) {
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != var && e[i] != 0)
                throw structural_error("as_univariate: polynomial involves other variables");
        u.c[e[var]] = c;
    }
    u.trim();
    return u;
}

MPoly from_univariate(const UPoly& u, const VarTablePtr& vars, int var) {
    MPoly out(vars);
    for (size_t i = 0; i < u.c.size(); ++i) {
        if (u.c[i] == 0) continue;
        Exponents e(vars->arity(), 0);
        e[var] = static_cast<int>(i);
        out += MPoly::monomial(vars, e, u.c[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (univariate / binary form)

namespace {

// Identify the two projective variables of a binary form, or the single
// variable of a univariate polynomial.
std::vector<int> used_vars(const MPoly& f) {
    std::vector<int> vs;
    for (int i = 0; i < f.vars()->arity(); ++i)
        if (f.uses_var(i)) vs.push_back(i);
    return vs;
}

} // namespace

std::vector<std::pair<MPoly, int>> squarefree_factor(const MPoly& f) {
    if (f.is_zero())
        throw domain_error(domain_fault::zero_input, "squarefree factorization of zero");
    auto vars = f.vars();
    auto vs = used_vars(f);
    std::vector<std::pair<MPoly, int>> out;
    if (vs.empty()) return out; // unit

    if (vs.size() > 2)
        throw structural_error("squarefree_factor expects a univariate polynomial or binary form");

    int x = vs[0];
    int y = (vs.size() == 2) ? vs[1] : -1;
    MPoly g = f;
    if (y >= 0) {
        if (!f.is_homogeneous())
            throw structural_error("squarefree_factor: two-variable input must be a binary form");
        // strip projective roots at [0:1] and [1:0] (powers of x and y)
        int ax = f.total_degree();
        int ay = f.total_degree();
        for (auto& [e, c] : f.terms()) {
            ax = std::min(ax, e[x]);
            ay = std::min(ay, e[y]);
        }
        if (ax > 0) out.emplace_back(MPoly::variable(vars, x), ax);
        if (ay > 0) out.emplace_back(MPoly::variable(vars, y), ay);
        if (ax > 0) g = divide_exact(g, MPoly::variable(vars, x, ax));
        if (ay > 0) g = divide_exact(g, MPoly::variable(vars, y, ay));
        // dehomogenize at y = 1; the x-degree survives since y no longer divides g
        g = g.substitute({{y, MPoly::constant(vars, 1)}}, vars);
    } else {
        int k = 0; // root at x = 0
        Exponents probe(vars->arity(), 0);
        while (true) {
            probe[x] = k;
            if (f.coeff(probe) != 0) break;
            ++k;
        }
        if (k > 0) {
            out.emplace_back(MPoly::variable(vars, x), k);
            g = divide_exact(g, MPoly::variable(vars, x, k));
        }
    }

    // Musser's gcd chain on the dehomogenized univariate part.
    auto emit = [&](const UPoly& fac, int mult) {
        if (y < 0) {
            out.emplace_back(from_univariate(fac, vars, x), mult);
            return;
        }
        // re-homogenize with y to a binary form of the factor's degree
        MPoly h(vars);
        int d = fac.degree();
        for (int i = 0; i <= d; ++i) {
            if (fac.c[i] == 0) continue;
            Exponents e(vars->arity(), 0);
            e[x] = i;
            e[y] = d - i;
            h += MPoly::monomial(vars, e, fac.c[i]);
        }
        out.emplace_back(h, mult);
    };
    UPoly u = make_monic(as_univariate(g, x));
    if (u.degree() >= 1) {
        UPoly gg = gcd(u, u.derivative());
        if (gg.degree() == 0) {
            emit(u, 1);
        } else {
            UPoly w = divmod(u, gg).first; // product of the distinct factors
            int i = 1;
            while (w.degree() >= 1) {
                UPoly y2 = gcd(w, gg);        // factors of multiplicity > i
                UPoly z = divmod(w, y2).first; // factors of multiplicity exactly i
                if (z.degree() >= 1) emit(z, i);
                w = y2;
                gg = divmod(gg, y2).first;
                ++i;
            }
        }
    }
    return out;
}

BinaryRoots binary_form_roots(const MPoly& f) {
    if (f.is_zero())
        throw domain_error(domain_fault::zero_input, "roots of the zero form");
    if (!f.is_homogeneous())
        throw structural_error("binary_form_roots expects a binary form");
    auto vs = used_vars(f);
    if (vs.size() > 2)
        throw structural_error("binary_form_roots expects two variables");
    BinaryRoots out;
    if (vs.empty()) return out;
    auto vars = f.vars();
    int x = -1, y = -1;
    // identify the standard pair even when one variable does not occur
    if (vs.size() == 2) { x = vs[0]; y = vs[1]; }
    else {
        x = vs[0];
        for (int i = 0; i < vars->arity(); ++i)
            if (i != x) { y = i; break; }
    }
    int ax = f.total_degree(), ay = f.total_degree();
    for (auto& [e, c] : f.terms()) {
        ax = std::min(ax, e[x]);
        ay = std::min(ay, y >= 0 ? e[y] : 0);
    }
    MPoly g = f;
    if (ax > 0) {
        out.rational.push_back({{Rational(0), Rational(1)}, ax}); // root of x
        g = divide_exact(g, MPoly::variable(vars, x, ax));
    }
    if (y >= 0 && ay > 0) {
        out.rational.push_back({{Rational(1), Rational(0)}, ay}); // root of y
        g = divide_exact(g, MPoly::variable(vars, y, ay));
    }
    if (y >= 0) g = g.substitute({{y, MPoly::constant(vars, 1)}}, vars);
    UPoly u = as_univariate(g, x);
    if (u.degree() >= 1) {
        UPoly lin_prod{std::vector<Rational>{Rational(1)}};
        for (auto& [r, m] : rational_roots(u)) {
            out.rational.push_back({{r, Rational(1)}, m});
            UPoly lin{std::vector<Rational>{-r, Rational(1)}};
            for (int i = 0; i < m; ++i) lin_prod = lin_prod * lin;
        }
        UPoly rem = divmod(u, lin_prod).first;
        if (rem.degree() >= 1) {
            MPoly remp = from_univariate(rem, vars, x);
            for (auto& [fac, m] : squarefree_factor(remp))
                out.conjugate_packets.push_back({fac.total_degree(), m});
        }
    }
    for (auto& [p, m] : out.rational) out.max_multiplicity = std::max(out.max_multiplicity, m);
    for (auto& [n, m] : out.conjugate_packets)
        out.max_multiplicity = std::max(out.max_multiplicity, m);
    return out;
}

// ---------------------------------------------------------------------------
// Resultant via Bareiss elimination on the Sylvester matrix.

MPoly resultant(const MPoly& f, const MPoly& g, int var) {
    if (f.is_zero() || g.is_zero())
        throw domain_error(domain_fault::zero_input, "resultant of the zero polynomial");
    int df = f.degree_in(var), dg = g.degree_in(var);
    if (df <= 0 && dg <= 0)
        throw domain_error(domain_fault::zero_input,
                           "resultant: both operands constant in the chosen variable");
    auto vars = f.vars();
    if (df == 0) return pow(f, dg);
    if (dg == 0) return pow(g, df);
    auto fc = f.coeffs_in(var), gc = g.coeffs_in(var);
    int n = df + dg;
    std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(vars)));
    // f's coefficients occupy the top dg rows
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k) m[r][r + k] = fc[df - k];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k) m[dg + r][r + k] = gc[dg - k];

    int sign = 1;
    MPoly prev = MPoly::constant(vars, 1);
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) { pivot = r; break; }
            if (pivot < 0) return MPoly(vars); // zero column => zero determinant
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MPoly(vars);
        }
        prev = m[k][k];
    }
    MPoly det = m[n - 1][n - 1];
    if (sign < 0) det *= Rational(-1);
    return det;
}

} // namespace g4

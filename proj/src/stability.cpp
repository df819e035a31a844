#include "stability.hpp"

#include "errors.hpp"
#include "poly_parse.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace g4 {

const char* status_name(StabilityStatus s) {
    switch (s) {
    case StabilityStatus::Stable: return "Stable";
    case StabilityStatus::StrictlySemistable: return "StrictlySemistable";
    case StabilityStatus::Polystable: return "Polystable";
    case StabilityStatus::Unstable: return "Unstable";
    }
    return "?";
}

namespace {

Reason reason(const std::string& rule, const std::string& clause, const std::string& anchor) {
    return Reason{rule, clause, anchor};
}

} // namespace

// ---------------------------------------------------------------------------
// Binary forms.

StabilityVerdict binary_form_git(const WeierstrassCurve& w) {
    if (w.f.is_zero())
        throw domain_error(domain_fault::ribbon_input, "z^2 = 0 carries no GIT verdict");
    if (w.f.total_degree() != 2 * w.g + 2)
        throw structural_error("binary form degree must be 2g+2");
    auto roots = binary_form_roots(w.f);
    int mmax = roots.max_multiplicity;
    StabilityVerdict v;
    if (mmax <= w.g) {
        v.status = StabilityStatus::Stable;
        v.reasons.push_back(reason(
            "binary-git.stable",
            "every root multiplicity is at most g = " + std::to_string(w.g),
            "git.binary-form.multiplicity"));
        return v;
    }
    if (mmax >= w.g + 2) {
        v.status = StabilityStatus::Unstable;
        v.reasons.push_back(reason(
            "binary-git.unstable",
            "a root of multiplicity " + std::to_string(mmax) + " >= g+2",
            "git.binary-form.multiplicity"));
        return v;
    }
    // strictly semistable: some root of multiplicity exactly g+1
    int heavy_rational = 0, heavy_conjugate = 0;
    for (auto& [p, m] : roots.rational)
        if (m == w.g + 1) ++heavy_rational;
    for (auto& [n, m] : roots.conjugate_packets)
        if (m == w.g + 1) heavy_conjugate += n;
    bool two_points = (heavy_rational + heavy_conjugate == 2) &&
                      (2 * (w.g + 1) == w.f.total_degree());
    if (two_points) {
        v.status = StabilityStatus::Polystable;
        v.reasons.push_back(reason(
            "binary-git.polystable",
            "the form is a unit times (l1 l2)^(g+1) with independent linear forms",
            "git.binary-form.polystable-orbit"));
    } else {
        v.status = StabilityStatus::StrictlySemistable;
        v.reasons.push_back(reason(
            "binary-git.strictly-semistable",
            "maximal root multiplicity is exactly g+1",
            "git.binary-form.multiplicity"));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Chow stability.

namespace {

bool entry_is_a_at_most(const InventoryEntry& e, int kmax) {
    return e.cls.kind == GermKind::A && e.cls.k <= kmax;
}

bool any_smooth_entry(const ChowInput& in, GermKind kind, int kmin, int kmax = 1 << 20) {
    for (auto& e : in.inventory.entries) {
        if (e.chart == "vertex") continue;
        if (e.cls.kind == kind && e.cls.k >= kmin && e.cls.k <= kmax) return true;
    }
    return false;
}

void validate_chow_input(const ChowInput& in) {
    if (in.quadric_rank < 2 || in.quadric_rank > 4)
        throw structural_error("quadric rank must be 2, 3 or 4");
    if (in.ribbon && in.reduced)
        throw structural_error("a ribbon is not reduced");
    if (in.vertex_entry && in.quadric_rank != 3)
        throw structural_error("vertex data only makes sense on the quadric cone");
    if (in.triborough && in.quadric_rank != 2)
        throw structural_error("triboroughs live on rank-2 quadrics");
}

// The structural signatures of the three strictly polystable orbits.
bool matches_c2a5_orbit(const ChowInput& in) {
    if (in.quadric_rank != 4) return false;
    if (in.inventory.entries.size() != 2) return false;
    for (auto& e : in.inventory.entries)
        if (!(e.cls.kind == GermKind::A && e.cls.k == 5 && e.orbit_size == 1)) return false;
    std::multiset<int> degs(in.component_degrees.begin(), in.component_degrees.end());
    if (degs != std::multiset<int>{1, 1, 4}) return false;
    if (in.model) {
        for (int i = 0; i < 2; ++i)
            if (!separating_check(in.inventory, i, *in.model)) return false;
    }
    return true;
}

bool matches_cd_orbit(const ChowInput& in) {
    if (in.quadric_rank != 2 || !in.triborough) return false;
    int d4 = in.inventory.count(GermKind::D4);
    int a1 = in.inventory.count(GermKind::A, 1);
    int total = 0;
    for (auto& e : in.inventory.entries) total += e.orbit_size;
    if (!(d4 == 2 && a1 == 3 && total == 5)) return false;
    if (!in.component_degrees.empty()) {
        std::multiset<int> degs(in.component_degrees.begin(), in.component_degrees.end());
        if (degs != std::multiset<int>{1, 1, 1, 1, 1, 1}) return false;
    }
    return true;
}

bool matches_cab_orbit(const ChowInput& in) {
    if (in.quadric_rank != 3) return false;
    if (!in.vertex_entry || in.vertex_entry->kind != GermKind::A || in.vertex_entry->k != 3)
        return false;
    int a5 = 0, a1 = 0, total = 0;
    for (auto& e : in.inventory.entries) {
        if (e.chart == "vertex") continue;
        total += e.orbit_size;
        if (e.cls.kind == GermKind::A && e.cls.k == 5) a5 += e.orbit_size;
        if (e.cls.kind == GermKind::A && e.cls.k == 1) a1 += e.orbit_size;
    }
    return a5 == 1 && (total == a5 + a1) && a1 <= 1;
}

} // namespace

StabilityVerdict chow_stability(const ChowInput& in) {
    validate_chow_input(in);
    StabilityVerdict v;
    if (in.ribbon) {
        v.status = StabilityStatus::Polystable;
        v.reasons.push_back(reason(
            "chow.ribbon",
            "non-reduced (2,3) intersection: the genus-4 ribbon; its cycle is a doubled "
            "twisted cubic, the distinguished point of the pencil of polystable orbits",
            "chow.nonreduced-ribbon"));
        return v;
    }
    if (!in.reduced)
        throw structural_error("non-reduced non-ribbon input is not a (2,3) cycle");
    if (!in.inventory.certified_complete) {
        if (!in.allow_uncertified)
            throw domain_error(domain_fault::precondition,
                               "singularity inventory is not certified complete");
        v.reasons.push_back(reason("chow.uncertified",
                                   "inventory completeness was overridden by the caller",
                                   "chow.uncertified-input"));
    }

    // Stable locus.
    bool smooth_ok = true;
    for (auto& e : in.inventory.entries) {
        if (e.chart == "vertex") continue;
        if (!entry_is_a_at_most(e, 4)) smooth_ok = false;
    }
    bool vertex_ok = !in.vertex_entry ||
                     (in.vertex_entry->kind == GermKind::A && in.vertex_entry->k <= 2);
    if (in.quadric_rank >= 3 && smooth_ok && vertex_ok) {
        v.status = StabilityStatus::Stable;
        v.reasons.push_back(reason(
            "chow.stable",
            "rank >= 3, at worst A4 at smooth points, at worst A2 at the vertex",
            "chow.stable-locus"));
        return v;
    }

    // Strictly semistable clauses.
    bool ss = false;
    if (in.quadric_rank == 4) {
        if (any_smooth_entry(in, GermKind::D4, 0) || any_smooth_entry(in, GermKind::A, 5, 5)) {
            ss = true;
            v.reasons.push_back(reason("chow.rank4.a", "the curve contains a D4 or A5 singularity",
                                       "chow.rank4-clause-a"));
        } else if (any_smooth_entry(in, GermKind::A, 6)) {
            if (in.component_degrees.empty())
                throw domain_error(domain_fault::precondition,
                                   "component degrees are required to decide the A6+ clause");
            bool no_small = std::all_of(in.component_degrees.begin(), in.component_degrees.end(),
                                        [](int d) { return d >= 3; });
            if (no_small) {
                ss = true;
                v.reasons.push_back(reason(
                    "chow.rank4.b",
                    "no component of degree <= 2 and a singularity A_k with k >= 6",
                    "chow.rank4-clause-b"));
            }
        }
    } else if (in.quadric_rank == 3) {
        bool vertex_is_a = !in.vertex_entry || in.vertex_entry->kind == GermKind::A;
        if (vertex_is_a) {
            bool clause_a = any_smooth_entry(in, GermKind::D4, 0) ||
                            any_smooth_entry(in, GermKind::A, 5, 5) ||
                            (in.vertex_entry && in.vertex_entry->k == 3);
            bool clause_b = false;
            if (!clause_a &&
                (any_smooth_entry(in, GermKind::A, 6) ||
                 (in.vertex_entry && in.vertex_entry->k >= 4))) {
                if (in.component_degrees.empty())
                    throw domain_error(domain_fault::precondition,
                                       "component degrees are required to decide the cone clause");
                clause_b = std::all_of(in.component_degrees.begin(), in.component_degrees.end(),
                                       [](int d) { return d >= 2; });
            }
            if (clause_a) {
                ss = true;
                v.reasons.push_back(reason(
                    "chow.rank3.a",
                    "a D4 or A5 at a smooth point, or a tacnode at the vertex",
                    "chow.rank3-clause-a"));
            } else if (clause_b) {
                ss = true;
                v.reasons.push_back(reason(
                    "chow.rank3.b",
                    "no line component, and A6+ at a smooth point or A4+ at the vertex",
                    "chow.rank3-clause-b"));
            }
        }
    } else { // rank 2
        if (in.triborough) {
            ss = true;
            v.reasons.push_back(reason(
                "chow.rank2.triborough",
                "the curve meets the singular line of the quadric in 3 distinct points",
                "chow.rank2-triborough"));
        }
    }

    if (!ss) {
        v.status = StabilityStatus::Unstable;
        v.reasons.push_back(reason("chow.unstable",
                                   "no stable or strictly semistable clause applies",
                                   "chow.unstable-complement"));
        return v;
    }

    // Polystable orbits within the strictly semistable locus.
    if (matches_c2a5_orbit(in)) {
        v.status = StabilityStatus::Polystable;
        v.reasons.push_back(reason("chow.polystable.c2a5",
                                   "two separating tacnodal rulings: the C_2A5 orbit",
                                   "chow.polystable-orbits"));
    } else if (matches_cd_orbit(in)) {
        v.status = StabilityStatus::Polystable;
        v.reasons.push_back(reason("chow.polystable.cd",
                                   "two triples of concurrent lines: the C_D orbit",
                                   "chow.polystable-orbits"));
    } else if (matches_cab_orbit(in)) {
        v.status = StabilityStatus::Polystable;
        v.reasons.push_back(reason("chow.polystable.cab",
                                   "tacnode at the vertex and one A5 on the cone: the C_AB pencil",
                                   "chow.polystable-orbits"));
    } else {
        v.status = StabilityStatus::StrictlySemistable;
        v.reasons.push_back(reason("chow.polystability-undecided",
                                   "strictly semistable; does not match an enumerated "
                                   "polystable orbit",
                                   "chow.polystable-orbits"));
    }
    return v;
}

StabilityVerdict last_chamber_vgit(const ChowInput& in) {
    StabilityVerdict chow = chow_stability(in);
    StabilityVerdict v = chow;
    auto demote = [&](const std::string& rule, const std::string& clause) {
        v.status = StabilityStatus::Unstable;
        v.reasons.insert(v.reasons.begin(), reason(rule, clause, "vgit.final-chamber"));
    };
    if (in.ribbon) {
        demote("vgit.ribbon", "ribbons are unstable in the final VGIT chamber");
        return v;
    }
    if (in.triborough) {
        demote("vgit.triborough", "elliptic triboroughs are unstable in the final VGIT chamber");
        return v;
    }
    if (in.vertex_entry && in.vertex_entry->kind == GermKind::A && in.vertex_entry->k == 3) {
        demote("vgit.cone-tacnode",
               "curves on a quadric cone with a tacnode at the vertex are unstable "
               "in the final VGIT chamber");
        return v;
    }
    if (chow.semistable())
        v.reasons.insert(v.reasons.begin(),
                         reason("vgit.chow-agreement",
                                "final-chamber VGIT verdict equals the Chow verdict",
                                "vgit.final-chamber"));
    return v;
}

ChowInput chow_input_from_curve(const CurveSpec& c, const std::vector<InventoryEntry>& extra,
                                const std::optional<ComponentModel>& model) {
    CurveStructure s = curve_structure(c, extra);
    ChowInput in;
    in.quadric_rank = s.quadric_rank;
    in.reduced = s.reduced;
    in.ribbon = s.ribbon;
    in.inventory = s.inventory;
    in.vertex_entry = s.vertex_entry;
    in.triborough = s.triborough;
    in.component_degrees = s.component_degrees;
    in.model = model;
    if (model) {
        if (in.component_degrees.empty())
            for (auto& comp : model->components)
                for (int i = 0; i < comp.orbit_size; ++i)
                    in.component_degrees.push_back(comp.degree);
        genus_budget_check(in.inventory, *model, arithmetic_genus(c));
    }
    return in;
}

// ---------------------------------------------------------------------------
// Alpha stability.

int CombCurve::arithmetic_genus() const {
    int g = 0;
    for (auto& c : components) g += c.genus;
    for (auto& s : sings) g += s.cls.delta;
    return g - static_cast<int>(components.size()) + 1;
}

const std::vector<ChamberRules>& chamber_table() {
    static const std::vector<ChamberRules> table = {
        {Chamber::OpenAbove911, "(9/11,1]", 1, {}, {}, false},
        {Chamber::Wall911, "9/11", 2, {}, {}, false},
        {Chamber::Open710To911, "(7/10,9/11)", 2, {1}, {}, false},
        {Chamber::Wall710, "7/10", 3, {1, 3}, {}, false},
        {Chamber::Open23To710, "(2/3,7/10)", 3, {1, 3}, {{1, 1}}, false},
        {Chamber::Wall23, "2/3", 4, {1, 3, 4}, {{1, 1}, {1, 4}, {4, 4}}, false},
        {Chamber::OpenBelow23, "(2/3-eps,2/3)", 4, {1, 3, 4}, {{1, 1}, {1, 4}, {4, 4}}, true},
    };
    return table;
}

Chamber chamber_of(const AlphaQuery& q) {
    if (q.tag) {
        if (*q.tag == "2/3-eps") return Chamber::OpenBelow23;
        throw domain_error(domain_fault::out_of_range, "unknown chamber tag " + *q.tag);
    }
    if (!q.value) throw structural_error("empty alpha query");
    const Rational& a = *q.value;
    if (a > 1 || a < Rational(2, 3))
        throw domain_error(domain_fault::out_of_range,
                           "alpha outside (2/3 - eps, 1]; the lower chambers are handled by "
                           "the VGIT and KSBA engines");
    if (a > Rational(9, 11)) return Chamber::OpenAbove911;
    if (a == Rational(9, 11)) return Chamber::Wall911;
    if (a > Rational(7, 10)) return Chamber::Open710To911;
    if (a == Rational(7, 10)) return Chamber::Wall710;
    if (a > Rational(2, 3)) return Chamber::Open23To710;
    return Chamber::Wall23;
}

namespace {

void validate_comb(const CombCurve& c) {
    if (c.components.empty()) throw structural_error("empty combinatorial curve");
    for (auto& s : c.sings) {
        if (s.cls.kind != GermKind::A && s.cls.kind != GermKind::D4)
            throw structural_error("combinatorial singularities must be A_k or D4");
        int total = 0;
        for (auto& t : s.touches) {
            if (t.component < 0 || t.component >= static_cast<int>(c.components.size()))
                throw structural_error("touch references a missing component");
            total += t.branches;
        }
        if (total != s.cls.branches)
            throw structural_error("branch counts do not match the singularity type");
    }
    // connectivity
    std::vector<int> parent(c.components.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto& s : c.sings)
        for (size_t i = 1; i < s.touches.size(); ++i)
            parent[find(s.touches[i].component)] = find(s.touches[0].component);
    int root = find(0);
    for (size_t i = 1; i < c.components.size(); ++i)
        if (find(static_cast<int>(i)) != root)
            throw structural_error("combinatorial curve is not connected");
}

using Subset = std::vector<bool>;

int branches_on(const CombSingularity& s, const Subset& sub) {
    int n = 0;
    for (auto& t : s.touches)
        if (sub[t.component]) n += t.branches;
    return n;
}

// Internal delta of an entry relative to a subcurve: full delta when all
// branches lie on the subcurve, the node delta for two of three D4 branches,
// zero otherwise.
int internal_delta(const CombSingularity& s, const Subset& sub) {
    int on = branches_on(s, sub);
    if (on == s.cls.branches) return s.cls.delta;
    if (s.cls.kind == GermKind::D4 && on == 2) return 1;
    return 0;
}

int subcurve_pa(const CombCurve& c, const Subset& sub, const std::set<int>& excluded_sings) {
    int g = 0, n = 0;
    for (size_t i = 0; i < sub.size(); ++i)
        if (sub[i]) {
            g += c.components[i].genus;
            ++n;
        }
    int delta = 0;
    for (size_t j = 0; j < c.sings.size(); ++j) {
        if (excluded_sings.count(static_cast<int>(j))) continue;
        delta += internal_delta(c.sings[j], sub);
    }
    return g + delta - n + 1;
}

bool subset_connected(const CombCurve& c, const Subset& sub) {
    std::vector<int> verts;
    for (size_t i = 0; i < sub.size(); ++i)
        if (sub[i]) verts.push_back(static_cast<int>(i));
    if (verts.empty()) return false;
    std::map<int, int> idx;
    for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    std::vector<int> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto& s : c.sings) {
        int first = -1;
        for (auto& t : s.touches) {
            if (!sub[t.component]) continue;
            if (first < 0) first = idx[t.component];
            else parent[find(idx[t.component])] = find(first);
        }
    }
    int root = find(0);
    for (size_t i = 1; i < verts.size(); ++i)
        if (find(static_cast<int>(i)) != root) return false;
    return true;
}

// Entries joining the subcurve to its complement.
std::vector<int> junctions(const CombCurve& c, const Subset& sub) {
    std::vector<int> out;
    for (size_t j = 0; j < c.sings.size(); ++j) {
        int on = branches_on(c.sings[j], sub);
        if (on > 0 && on < c.sings[j].cls.branches) out.push_back(static_cast<int>(j));
    }
    return out;
}

std::vector<Subset> proper_subsets(int n) {
    std::vector<Subset> out;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        Subset s(n, false);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s[i] = true;
        out.push_back(s);
    }
    return out;
}

} // namespace

bool has_ak_attached_elliptic_tail(const CombCurve& c, int k) {
    validate_comb(c);
    int n = static_cast<int>(c.components.size());
    if (k % 2 == 1) {
        // tail = connected genus-1 subcurve meeting the rest in a single
        // point, which is an A_k singularity
        for (auto& sub : proper_subsets(n)) {
            if (!subset_connected(c, sub)) continue;
            auto js = junctions(c, sub);
            if (js.size() != 1) continue;
            const auto& s = c.sings[js[0]];
            if (!(s.cls.kind == GermKind::A && s.cls.k == k && s.cls.branches == 2)) continue;
            if (branches_on(s, sub) != 1) continue;
            if (subcurve_pa(c, sub, {}) == 1) return true;
        }
        return false;
    }
    // even k: the marked point is crimped into a unibranch A_k on the curve
    // itself; the tail is the whole normalization at that point
    for (size_t j = 0; j < c.sings.size(); ++j) {
        const auto& s = c.sings[j];
        if (!(s.cls.kind == GermKind::A && s.cls.k == k && s.cls.branches == 1)) continue;
        if (c.arithmetic_genus() - s.cls.delta == 1) return true;
    }
    return false;
}

namespace {

// Chains E_1,...,E_l of genus-1 pieces joined by tacnodes; the two ends carry
// attachment types (odd: a two-branch junction with the complement; even: a
// unibranch crimp on the end piece).  For Weierstrass chains the last piece
// has genus 2 and the final joint sits at a marked Weierstrass point.
struct ChainSearch {
    const CombCurve& c;
    bool weierstrass; // last piece of genus 2, single A1 attachment
    int k1 = 1, k2 = 1;

    bool piece_ok(const Subset& sub, const std::set<int>& exclude, int target_pa) const {
        return subset_connected(c, sub) && subcurve_pa(c, sub, exclude) == target_pa;
    }

    bool run() const {
        int n = static_cast<int>(c.components.size());
        auto subs = proper_subsets(n);
        std::vector<Subset> all = subs;
        // the chain may be the whole curve when both ends are crimps
        Subset whole(n, true);
        all.push_back(whole);
        for (auto& sub : all)
            if (try_chain(sub)) return true;
        return false;
    }

    // try to realize `sub` as the full chain E = E_1 u ... u E_l
    bool try_chain(const Subset& sub) const {
        if (!subset_connected(c, sub)) return false;
        auto js = junctions(c, sub);
        if (weierstrass) {
            if (js.size() != 1) return false;
            const auto& s = c.sings[js[0]];
            if (!(s.cls.kind == GermKind::A && s.cls.k == 1)) return false;
            // the attachment is at a marked Weierstrass point of a genus-2
            // piece only in the length-1 case; longer chains attach to a
            // genus-1 piece and the mark sits on the last joint
            return decompose(sub, js[0], -1);
        }
        // elliptic chain: ends of type k1/k2; odd ends are junctions
        std::vector<int> need_junctions;
        int crimps_needed = 0;
        if (k1 % 2 == 1) need_junctions.push_back(k1);
        else ++crimps_needed;
        if (k2 % 2 == 1) need_junctions.push_back(k2);
        else ++crimps_needed;
        if (static_cast<int>(js.size()) != static_cast<int>(need_junctions.size()))
            return false;
        std::multiset<int> have;
        for (int j : js) {
            const auto& s = c.sings[j];
            if (s.cls.kind != GermKind::A || s.cls.branches != 2) return false;
            have.insert(s.cls.k);
        }
        std::multiset<int> want(need_junctions.begin(), need_junctions.end());
        if (have != want) return false;
        // locate the crimp entries on the chain
        std::vector<int> crimps;
        for (size_t j = 0; j < c.sings.size(); ++j) {
            const auto& s = c.sings[j];
            if (s.cls.kind == GermKind::A && s.cls.branches == 1 &&
                branches_on(s, sub) == 1 &&
                ((k1 % 2 == 0 && s.cls.k == k1) || (k2 % 2 == 0 && s.cls.k == k2)))
                crimps.push_back(static_cast<int>(j));
        }
        if (static_cast<int>(crimps.size()) < crimps_needed) return false;
        int ja = js.empty() ? -1 : js[0];
        int jb = js.size() > 1 ? js[1] : (crimps_needed > 0 ? crimps[0] : -1);
        if (js.empty() && crimps.size() >= 2) { ja = crimps[0]; jb = crimps[1]; }
        else if (js.size() == 1 && crimps_needed == 1) { jb = crimps[0]; }
        return decompose_elliptic(sub, ja, jb);
    }

    // split sub into genus-1 pieces joined by single tacnodes, with the two
    // end markers ja, jb (junction or crimp entries) on the first and last
    bool decompose_elliptic(const Subset& sub, int ja, int jb) const {
        // enumerate partitions greedily: pieces are the connected components
        // after removing the internal tacnodes; try every subset of internal
        // A3 entries as the joint set
        std::vector<int> internal_a3;
        for (size_t j = 0; j < c.sings.size(); ++j) {
            const auto& s = c.sings[j];
            if (s.cls.kind == GermKind::A && s.cls.k == 3 &&
                branches_on(s, sub) == s.cls.branches && s.cls.branches == 2)
                internal_a3.push_back(static_cast<int>(j));
        }
        int m = static_cast<int>(internal_a3.size());
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::set<int> joints;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) joints.insert(internal_a3[i]);
            if (chain_with_joints(sub, joints, ja, jb, false)) return true;
        }
        return false;
    }

    bool decompose(const Subset& sub, int attach, int unused) const {
        (void)unused;
        std::vector<int> internal_a3;
        for (size_t j = 0; j < c.sings.size(); ++j) {
            const auto& s = c.sings[j];
            if (s.cls.kind == GermKind::A && s.cls.k == 3 &&
                branches_on(s, sub) == s.cls.branches && s.cls.branches == 2)
                internal_a3.push_back(static_cast<int>(j));
        }
        int m = static_cast<int>(internal_a3.size());
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::set<int> joints;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) joints.insert(internal_a3[i]);
            if (chain_with_joints(sub, joints, attach, -1, true)) return true;
        }
        return false;
    }

    // Check that removing `joints` splits sub into a path of pieces with the
    // required genera and end markers.
    bool chain_with_joints(const Subset& sub, const std::set<int>& joints, int ja, int jb,
                           bool wchain) const {
        int n = static_cast<int>(c.components.size());
        // pieces: connected components of sub with joints removed
        std::vector<int> piece(n, -1);
        int npieces = 0;
        for (int start = 0; start < n; ++start) {
            if (!sub[start] || piece[start] >= 0) continue;
            // BFS
            std::vector<int> stack{start};
            piece[start] = npieces;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (size_t j = 0; j < c.sings.size(); ++j) {
                    if (joints.count(static_cast<int>(j))) continue;
                    const auto& s = c.sings[j];
                    bool touches_v = false;
                    for (auto& t : s.touches)
                        if (t.component == v) touches_v = true;
                    if (!touches_v) continue;
                    for (auto& t : s.touches) {
                        int w = t.component;
                        if (sub[w] && piece[w] < 0) {
                            piece[w] = npieces;
                            stack.push_back(w);
                        }
                    }
                }
            }
            ++npieces;
        }
        int l = npieces;
        if (static_cast<int>(joints.size()) != l - 1) return false;
        // adjacency via joints must form a path
        std::vector<std::set<int>> adj(l);
        for (int j : joints) {
            std::set<int> ps;
            for (auto& t : c.sings[j].touches)
                if (sub[t.component]) ps.insert(piece[t.component]);
            if (ps.size() != 2) return false;
            auto it = ps.begin();
            int a = *it++, b = *it;
            adj[a].insert(b);
            adj[b].insert(a);
        }
        std::vector<int> ends;
        for (int i = 0; i < l; ++i) {
            if (adj[i].size() > 2) return false;
            if (static_cast<int>(adj[i].size()) <= (l == 1 ? 0 : 1)) ends.push_back(i);
        }
        if (l == 1) ends = {0, 0};
        if (static_cast<int>(ends.size()) != 2) return false;
        // order the path from the piece carrying ja
        auto piece_of_marker = [&](int j) -> int {
            if (j < 0) return -1;
            for (auto& t : c.sings[j].touches)
                if (sub[t.component]) return piece[t.component];
            return -1;
        };
        int pa = piece_of_marker(ja);
        int pb = piece_of_marker(jb);
        int first = ends[0], last = ends[1];
        if (pa == last || pb == first) std::swap(first, last);
        if (pa >= 0 && pa != first) return false;
        if (!wchain && pb >= 0 && pb != last) return false;
        // genus requirements: exclude joints and end crimps from the budgets
        std::set<int> exclude = joints;
        if (ja >= 0) exclude.insert(ja);
        if (jb >= 0) exclude.insert(jb);
        std::vector<int> order;
        {
            int prev = -1, cur = first;
            order.push_back(cur);
            while (static_cast<int>(order.size()) < l) {
                int nxt = -1;
                for (int w : adj[cur])
                    if (w != prev) nxt = w;
                if (nxt < 0) return false;
                prev = cur;
                cur = nxt;
                order.push_back(cur);
            }
        }
        for (int i = 0; i < l; ++i) {
            Subset ps(n, false);
            for (int v = 0; v < n; ++v)
                if (sub[v] && piece[v] == order[i]) ps[v] = true;
            int target = 1;
            if (wchain && i == l - 1) target = 2;
            if (subcurve_pa(c, ps, exclude) != target) return false;
        }
        if (wchain) {
            // the Weierstrass marking: length 1 attaches at a marked point of
            // the genus-2 piece; longer chains mark the last joint
            if (l == 1) {
                const auto& s = c.sings[ja];
                for (auto& t : s.touches)
                    if (sub[t.component] && t.at_weierstrass_point) return true;
                return false;
            }
            // find the joint between order[l-2] and order[l-1]
            for (int j : joints) {
                std::set<int> ps;
                for (auto& t : c.sings[j].touches)
                    if (sub[t.component]) ps.insert(piece[t.component]);
                if (ps.count(order[l - 2]) && ps.count(order[l - 1])) {
                    for (auto& t : c.sings[j].touches)
                        if (piece[t.component] == order[l - 1] && t.at_weierstrass_point)
                            return true;
                    return false;
                }
            }
            return false;
        }
        return true;
    }
};

} // namespace

bool has_elliptic_chain_attached(const CombCurve& c, int k1, int k2) {
    validate_comb(c);
    ChainSearch cs{c, false, k1, k2};
    return cs.run();
}

bool has_a1_weierstrass_chain(const CombCurve& c) {
    validate_comb(c);
    ChainSearch cs{c, true};
    return cs.run();
}

StabilityVerdict alpha_stability(const CombCurve& c, const AlphaQuery& alpha) {
    validate_comb(c);
    Chamber ch = chamber_of(alpha);
    const ChamberRules* rules = nullptr;
    for (auto& r : chamber_table())
        if (r.id == ch) rules = &r;
    StabilityVerdict v;
    // allowed singularity types first
    for (auto& s : c.sings) {
        bool ok = s.cls.kind == GermKind::A && s.cls.k <= rules->max_a;
        if (!ok) {
            v.status = StabilityStatus::Unstable;
            v.reasons.push_back(reason(
                "alpha.singularity-type",
                "singularity " + s.cls.label() + " is not allowed on " + rules->label +
                    " (only A_k with k <= " + std::to_string(rules->max_a) + ")",
                "hk.chamber-singularities"));
            return v;
        }
    }
    // then the forbidden sub-configurations
    for (int k : rules->forbidden_tail_attach)
        if (has_ak_attached_elliptic_tail(c, k)) {
            v.status = StabilityStatus::Unstable;
            v.reasons.push_back(reason("alpha.elliptic-tail",
                                       "contains an A" + std::to_string(k) +
                                           "-attached elliptic tail, forbidden on " + rules->label,
                                       "hk.attached-tails"));
            return v;
        }
    for (auto& [k1, k2] : rules->forbidden_chain_attach)
        if (has_elliptic_chain_attached(c, k1, k2)) {
            v.status = StabilityStatus::Unstable;
            v.reasons.push_back(reason("alpha.elliptic-chain",
                                       "contains an A" + std::to_string(k1) + "/A" +
                                           std::to_string(k2) +
                                           "-attached elliptic chain, forbidden on " + rules->label,
                                       "hk.attached-chains"));
            return v;
        }
    if (rules->forbid_a1_weierstrass_chains && has_a1_weierstrass_chain(c)) {
        v.status = StabilityStatus::Unstable;
        v.reasons.push_back(reason("alpha.weierstrass-chain",
                                   "contains an A1-attached Weierstrass chain, forbidden on " +
                                       rules->label,
                                   "hk.attached-chains"));
        return v;
    }
    v.status = StabilityStatus::Stable;
    v.reasons.push_back(reason("alpha.accepted",
                               "all clauses of chamber " + rules->label + " hold",
                               "hk.chamber-singularities"));
    return v;
}

// ---------------------------------------------------------------------------
// The degenerate-surface family filter.

WeierstrassCurve s2a5_component_curve(const S2A5Params& p) {
    auto b = binary_vars();
    MPoly x = MPoly::variable(b, 0), y = MPoly::variable(b, 1);
    MPoly half = pow(x, 3) - x * pow(y, 2) * p.a;
    MPoly q = pow(y, 6) * p.b0 + x * pow(y, 5) * p.b1 + pow(x, 2) * pow(y, 4) * p.b2 +
              pow(x, 3) * pow(y, 3) * p.b3;
    MPoly f = half * half * Rational(1, 4) - q;
    return WeierstrassCurve{2, f};
}

StabilityVerdict s2a5_family_filter(const S2A5Params& p1, const S2A5Params& p2) {
    StabilityVerdict v;
    if (!p1.nonzero() || !p2.nonzero()) {
        v.status = StabilityStatus::Unstable;
        v.reasons.push_back(reason(
            "s2a5.zero-vector",
            "a parameter vector vanishes identically; the member is KSBA-rejected",
            "ksba.s2a5-family"));
        return v;
    }
    for (const S2A5Params* p : {&p1, &p2}) {
        WeierstrassCurve w = s2a5_component_curve(*p);
        auto inv = weierstrass_singularities(w);
        for (auto& e : inv.entries)
            if (!(e.cls.kind == GermKind::A && e.cls.k <= 4))
                throw domain_error(domain_fault::inconsistent,
                                   "nonzero family member with a singularity worse than A4");
    }
    v.status = StabilityStatus::Stable;
    v.reasons.push_back(reason("s2a5.nonzero",
                               "both parameter vectors are nonzero; components have at "
                               "worst A4 singularities (verified on the genus-2 models)",
                               "ksba.s2a5-family"));
    return v;
}

} // namespace g4

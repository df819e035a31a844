#include "corpus.hpp"

#include "errors.hpp"
#include "poly_parse.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace g4 {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        auto q = parse_rational(j.get<std::string>());
        if (!q) throw parse_error("bad rational literal " + j.get<std::string>());
        return *q;
    }
    throw parse_error("expected a rational (integer or \"p/q\" string)");
}

StabilityStatus status_from_string(const std::string& s) {
    if (s == "Stable") return StabilityStatus::Stable;
    if (s == "StrictlySemistable") return StabilityStatus::StrictlySemistable;
    if (s == "Polystable") return StabilityStatus::Polystable;
    if (s == "Unstable") return StabilityStatus::Unstable;
    throw parse_error("unknown stability status " + s);
}

GermClass germ_class_from_label(const std::string& label) {
    if (label == "D4") return d4_class();
    if (label == "smooth") return smooth_class();
    if (label.size() > 1 && label[0] == 'A') return a_class(std::stoi(label.substr(1)));
    throw parse_error("unknown singularity label " + label);
}

} // namespace

// ---------------------------------------------------------------------------
// Curve text grammar.

ParsedCurve parse_curve_text(const std::string& text) {
    std::vector<std::string> stmts;
    std::string cur;
    for (char ch : text) {
        if (ch == ';') {
            stmts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) stmts.push_back(trim(cur));
    if (stmts.empty()) throw parse_error("empty curve description");

    std::istringstream head(stmts[0]);
    std::string kw, kind;
    head >> kw >> kind;
    if (kw != "ambient") throw parse_error("curve description must start with 'ambient'");

    ParsedCurve out;
    CurveSpec spec;
    VarTablePtr vars;
    std::optional<int> wp_z_weight;
    if (kind == "p1xp1") {
        spec.ambient = P1xP1Ambient{};
        vars = p1xp1_vars();
    } else if (kind == "wp") {
        std::array<int, 3> w{};
        if (!(head >> w[0] >> w[1] >> w[2]))
            throw parse_error("ambient wp needs three weights");
        spec.ambient = WeightedPlaneAmbient{w};
        vars = wp_vars(w);
        wp_z_weight = w[2];
    } else if (kind == "ci_p3") {
        vars = ci_vars();
    } else {
        throw parse_error("unknown ambient " + kind);
    }

    std::vector<MPoly> eqs;
    for (size_t i = 1; i < stmts.size(); ++i) {
        const std::string& st = stmts[i];
        if (st.empty()) continue;
        std::istringstream is(st);
        std::string verb;
        is >> verb;
        std::string rest = trim(st.substr(verb.size()));
        if (verb == "eq") {
            eqs.push_back(parse_poly(rest, vars));
        } else if (verb == "weierstrass") {
            if (!wp_z_weight || (*wp_z_weight) < 2)
                throw parse_error("weierstrass form needs ambient wp 1 1 (g+1)");
            MPoly f = parse_poly(rest, binary_vars());
            out.weier = WeierstrassCurve{*wp_z_weight - 1, f};
            // also record the weighted-plane equation z^2 - f
            std::map<int, MPoly> im{{0, MPoly::variable(vars, 0)},
                                    {1, MPoly::variable(vars, 1)}};
            MPoly fw = f.substitute(im, vars);
            eqs.push_back(MPoly::variable(vars, 2, 2) - fw);
            spec.tags.push_back("weierstrass");
        } else if (verb == "component") {
            // component <poly>*m : the multiplicity is the integer after the
            // last '*'
            auto star = rest.rfind('*');
            int mult = 1;
            std::string ptext = rest;
            if (star != std::string::npos) {
                std::string tail = trim(rest.substr(star + 1));
                bool all_digits = !tail.empty() &&
                                  std::all_of(tail.begin(), tail.end(),
                                              [](char c) { return std::isdigit(c); });
                if (all_digits) {
                    mult = std::stoi(tail);
                    ptext = trim(rest.substr(0, star));
                }
            }
            spec.components.emplace_back(parse_poly(ptext, vars), mult);
        } else if (verb == "tag") {
            spec.tags.push_back(trim(rest));
        } else {
            throw parse_error("unknown statement '" + verb + "'");
        }
    }
    if (kind == "ci_p3") {
        if (eqs.size() != 2)
            throw parse_error("a (2,3) complete intersection needs exactly two equations");
        int d0 = 0, d1 = 0;
        eqs[0].is_homogeneous(&d0);
        eqs[1].is_homogeneous(&d1);
        if (d0 == 3 && d1 == 2) std::swap(eqs[0], eqs[1]);
        spec.ambient = CIAmbient{eqs[0], eqs[1]};
        spec.equation = MPoly(vars);
    } else {
        if (eqs.size() != 1) throw parse_error("expected exactly one curve equation");
        spec.equation = eqs[0];
    }
    validate(spec);
    out.spec = std::move(spec);
    return out;
}

std::string print_curve_text(const ParsedCurve& c) {
    std::ostringstream os;
    if (!c.spec) throw structural_error("cannot print an empty curve");
    const CurveSpec& spec = *c.spec;
    if (std::holds_alternative<P1xP1Ambient>(spec.ambient)) {
        os << "ambient p1xp1; eq " << spec.equation.str() << ";";
    } else if (std::holds_alternative<WeightedPlaneAmbient>(spec.ambient)) {
        auto w = std::get<WeightedPlaneAmbient>(spec.ambient).weights;
        os << "ambient wp " << w[0] << " " << w[1] << " " << w[2] << "; ";
        if (c.weier) os << "weierstrass " << c.weier->f.str() << ";";
        else os << "eq " << spec.equation.str() << ";";
    } else {
        const auto& ci = std::get<CIAmbient>(spec.ambient);
        os << "ambient ci_p3; eq " << ci.quadric.str() << "; eq " << ci.cubic.str() << ";";
    }
    for (auto& [f, m] : spec.components) os << " component " << f.str() << "*" << m << ";";
    for (auto& t : spec.tags)
        if (t != "weierstrass") os << " tag " << t << ";";
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON serialization.

Json curve_to_json(const ParsedCurve& c) {
    if (!c.spec) throw structural_error("cannot serialize an empty curve");
    const CurveSpec& spec = *c.spec;
    Json j;
    if (std::holds_alternative<P1xP1Ambient>(spec.ambient)) {
        j["ambient"] = {{"kind", "p1xp1"}};
        j["equations"] = {spec.equation.str()};
    } else if (std::holds_alternative<WeightedPlaneAmbient>(spec.ambient)) {
        auto w = std::get<WeightedPlaneAmbient>(spec.ambient).weights;
        j["ambient"] = {{"kind", "weighted_plane"}, {"weights", {w[0], w[1], w[2]}}};
        if (c.weier) j["weierstrass"] = c.weier->f.str();
        else j["equations"] = {spec.equation.str()};
    } else {
        const auto& ci = std::get<CIAmbient>(spec.ambient);
        j["ambient"] = {{"kind", "ci_p3"}};
        j["equations"] = {ci.quadric.str(), ci.cubic.str()};
    }
    if (!spec.components.empty()) {
        Json comps = Json::array();
        for (auto& [f, m] : spec.components)
            comps.push_back({{"poly", f.str()}, {"multiplicity", m}});
        j["components"] = comps;
    }
    Json tags = Json::array();
    for (auto& t : spec.tags)
        if (t != "weierstrass") tags.push_back(t);
    j["tags"] = tags;
    return j;
}

ParsedCurve curve_from_json(const Json& j) {
    std::ostringstream text;
    const Json& amb = j.at("ambient");
    std::string kind = amb.at("kind").get<std::string>();
    if (kind == "p1xp1") {
        text << "ambient p1xp1;";
    } else if (kind == "weighted_plane") {
        auto w = amb.at("weights");
        text << "ambient wp " << w[0].get<int>() << " " << w[1].get<int>() << " "
             << w[2].get<int>() << ";";
    } else if (kind == "ci_p3") {
        text << "ambient ci_p3;";
    } else {
        throw parse_error("unknown ambient kind " + kind);
    }
    if (j.contains("weierstrass"))
        text << " weierstrass " << j.at("weierstrass").get<std::string>() << ";";
    if (j.contains("equations"))
        for (auto& e : j.at("equations")) text << " eq " << e.get<std::string>() << ";";
    if (j.contains("components"))
        for (auto& comp : j.at("components"))
            text << " component " << comp.at("poly").get<std::string>() << "*"
                 << comp.value("multiplicity", 1) << ";";
    if (j.contains("tags"))
        for (auto& t : j.at("tags")) text << " tag " << t.get<std::string>() << ";";
    return parse_curve_text(text.str());
}

Json germ_class_to_json(const GermClass& c) {
    Json j;
    switch (c.kind) {
    case GermKind::Smooth: j["kind"] = "smooth"; break;
    case GermKind::A: j["kind"] = "A"; j["k"] = c.k; break;
    case GermKind::D4: j["kind"] = "D4"; break;
    case GermKind::Other: j["kind"] = "other"; break;
    }
    j["mu"] = c.mu;
    j["delta"] = c.delta;
    j["branches"] = c.branches;
    j["multiplicity"] = c.multiplicity;
    if (!c.branches_exact) j["branches_exact"] = false;
    return j;
}

Json inventory_to_json(const SingularityInventory& inv) {
    Json entries = Json::array();
    for (auto& e : inv.entries) {
        Json je;
        je["chart"] = e.chart;
        if (!e.point.empty()) {
            Json pt = Json::array();
            for (auto& x : e.point) pt.push_back(to_string(x));
            je["point"] = pt;
        }
        je["class"] = germ_class_to_json(e.cls);
        if (e.orbit_size != 1) je["orbit"] = e.orbit_size;
        if (!e.note.empty()) je["note"] = e.note;
        entries.push_back(je);
    }
    Json j;
    j["entries"] = entries;
    j["total_delta"] = inv.total_delta;
    j["certified_complete"] = inv.certified_complete;
    if (!inv.warnings.empty()) j["warnings"] = inv.warnings;
    return j;
}

Json verdict_to_json(const StabilityVerdict& v) {
    Json reasons = Json::array();
    for (auto& r : v.reasons)
        reasons.push_back({{"rule", r.rule}, {"clause", r.clause}, {"anchor", r.anchor}});
    return Json{{"status", status_name(v.status)}, {"reasons", reasons}};
}

Json tc_report_to_json(const TCReport& r) {
    Json items = Json::array();
    for (auto& i : r.items)
        items.push_back({{"name", i.name}, {"pass", i.pass}, {"lhs", i.lhs}, {"rhs", i.rhs}});
    return Json{{"items", items}, {"all_pass", r.all_pass()}};
}

Json identity_report_to_json(const IdentityReport& r) {
    Json items = Json::object();
    for (auto& i : r.items)
        items[i.id] = {{"pass", i.pass}, {"lhs", i.lhs}, {"rhs", i.rhs}};
    return Json{{"identities", items}, {"all_pass", r.all_pass()}};
}

Json div_class_to_json(const DivClass& d) {
    return Json{{"lambda", to_string(d.lambda)},
                {"delta0", to_string(d.d0)},
                {"delta1", to_string(d.d1)},
                {"delta2", to_string(d.d2)},
                {"pretty", d.str()}};
}

Json walls_to_json() {
    Json rows = Json::array();
    for (auto& w : walls())
        rows.push_back({{"index", w.index},
                        {"alpha", to_string(w.alpha)},
                        {"locus_removed", w.locus_removed},
                        {"singularity_introduced", w.singularity_introduced}});
    return rows;
}

CombCurve comb_curve_from_json(const Json& j) {
    CombCurve c;
    for (auto& comp : j.at("components")) {
        CombComponent cc;
        cc.genus = comp.at("genus").get<int>();
        cc.label = comp.value("label", "");
        c.components.push_back(cc);
    }
    for (auto& s : j.value("singularities", Json::array())) {
        CombSingularity cs;
        cs.cls = germ_class_from_label(s.at("type").get<std::string>());
        for (auto& t : s.at("touches")) {
            CombTouch ct;
            ct.component = t.at("component").get<int>();
            ct.branches = t.value("branches", 1);
            ct.at_weierstrass_point = t.value("weierstrass", false);
            cs.touches.push_back(ct);
        }
        c.sings.push_back(cs);
    }
    return c;
}

ComponentModel component_model_from_json(const Json& j) {
    ComponentModel m;
    for (auto& comp : j.at("components")) {
        ComponentInfo ci;
        ci.geometric_genus = comp.at("genus").get<int>();
        ci.orbit_size = comp.value("orbit", 1);
        ci.degree = comp.value("degree", 0);
        ci.label = comp.value("label", "");
        m.components.push_back(ci);
    }
    for (auto& inc : j.value("incidences", Json::array())) {
        Incidence in;
        in.entry = inc.at("entry").get<int>();
        in.component = inc.at("component").get<int>();
        in.branches = inc.value("branches", 1);
        m.incidences.push_back(in);
    }
    return m;
}

std::vector<InventoryEntry> extra_entries_from_json(const Json& j) {
    std::vector<InventoryEntry> out;
    for (auto& e : j) {
        InventoryEntry ie;
        ie.chart = e.value("chart", "orbit");
        ie.cls = germ_class_from_label(e.at("type").get<std::string>());
        ie.orbit_size = e.value("orbit", 1);
        ie.note = e.value("note", "");
        out.push_back(ie);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Claims registry.

const std::map<std::string, std::string>& claims_registry() {
    static const std::map<std::string, std::string> registry = {
        {"inventory.named-curves",
         "singularity inventories of the named curves: two separating tacnodal rulings; "
         "two triples of concurrent lines with three extra nodes; the cone pencil with a "
         "vertex tacnode and one A5; the two-cusp hyperelliptic curve"},
        {"inventory.genus-budget",
         "every reduced fixture satisfies sum(geometric genera) + delta - components + 1 = p_a"},
        {"inventory.separating", "normalizing a separating singularity disconnects the curve"},
        {"git.binary-form.multiplicity",
         "stable iff all root multiplicities <= g; strictly semistable at g+1; unstable "
         "beyond"},
        {"git.binary-form.polystable-orbit",
         "polystable strictly semistable forms are (l1 l2)^(g+1) with independent forms"},
        {"chow.stable-locus",
         "Chow stable: rank >= 3, at worst A4 at smooth points, at worst A2 at the vertex"},
        {"chow.rank4-clause-a", "rank 4 strictly semistable via a D4 or A5 singularity"},
        {"chow.rank4-clause-b", "rank 4 strictly semistable via A6+ and no small components"},
        {"chow.rank3-clause-a",
         "rank 3 strictly semistable via D4/A5 at smooth points or a vertex tacnode"},
        {"chow.rank3-clause-b",
         "rank 3 strictly semistable via A6+ smooth or A4+ vertex and no lines"},
        {"chow.rank2-triborough",
         "rank 2 strictly semistable iff the curve meets the double line in 3 distinct points"},
        {"chow.nonreduced-ribbon", "a non-reduced (2,3) intersection is the genus-4 ribbon"},
        {"chow.polystable-orbits",
         "exactly three strictly polystable orbits: the tacnodal rulings, the six lines, "
         "and the cone pencil"},
        {"chow.unstable-complement", "everything else in the balance is unstable"},
        {"chow.uncertified-input", "uncertified inventories must be overridden explicitly"},
        {"vgit.final-chamber",
         "final VGIT chamber = Chow verdicts minus ribbons, triboroughs and vertex tacnodes"},
        {"hk.chamber-singularities",
         "allowed singularity ladder per alpha chamber: A1 to A4 as alpha decreases to 2/3"},
        {"hk.attached-tails", "forbidden attached elliptic tails per chamber"},
        {"hk.attached-chains",
         "forbidden attached elliptic chains and Weierstrass chains per chamber"},
        {"ksba.s2a5-family",
         "family members on the degenerate surface are accepted iff both parameter vectors "
         "are nonzero; components then have at worst A4"},
        {"cone.a3-normal-form",
         "the unique unipotent transform to y^2z^2 + Bx^3yz + Ax^6 + y^2h4 with 4A != B^2"},
        {"cone.a4-degeneration",
         "A4-vertex sextics degenerate equivariantly to the two-cusp hyperelliptic curve"},
        {"cone.test-configuration",
         "the equivariant family interpolating the cone sextic and the two-cusp curve"},
        {"limits.one-ps", "one-parameter-subgroup limits keep the extremal weight terms"},
        {"pic.canonical-class", "K = 13 lambda - 2 delta"},
        {"pic.identities", "the divisor-class identities of the projectivity argument"},
        {"pic.slope-map", "t(alpha) = (34a-16)/(33a-14) and its inverse"},
        {"table.walls", "the nine walls with their loci and new singularities"},
    };
    return registry;
}

// ---------------------------------------------------------------------------
// Fixture verification.

namespace {

struct Ctx {
    std::string id;
    std::vector<FixtureOutcome>* out;

    void push(const std::string& check, bool pass, const std::string& detail = "") {
        out->push_back({id, check, pass, detail});
    }
};

SingularityInventory fixture_inventory(const ParsedCurve& pc,
                                       const std::vector<InventoryEntry>& extra) {
    if (pc.weier) return weierstrass_singularities(*pc.weier);
    const CurveSpec& spec = *pc.spec;
    if (std::holds_alternative<WeightedPlaneAmbient>(spec.ambient)) {
        auto w = std::get<WeightedPlaneAmbient>(spec.ambient).weights;
        if (w[0] == 1 && w[1] == 1 && w[2] >= 3) {
            // hyperelliptic models go through the double-cover rules
            return weierstrass_singularities(weierstrass_from_weighted_plane(spec));
        }
    }
    return singularity_inventory(spec, extra);
}

void check_inventory_expectation(Ctx& ctx, const Json& expected,
                                 SingularityInventory& inv) {
    if (expected.contains("inventory")) {
        bool ok = true;
        std::string detail;
        int expected_total = 0;
        for (auto& item : expected.at("inventory")) {
            GermClass cls = germ_class_from_label(item.at("type").get<std::string>());
            int count = item.value("count", 1);
            expected_total += count;
            int got = inv.count(cls.kind, cls.kind == GermKind::A ? cls.k : -1);
            if (got != count) {
                ok = false;
                detail += item.at("type").get<std::string>() + ": expected " +
                          std::to_string(count) + ", got " + std::to_string(got) + "; ";
            }
        }
        int total = 0;
        for (auto& e : inv.entries) total += e.orbit_size;
        if (total != expected_total) {
            ok = false;
            detail += "total entries " + std::to_string(total) + " != " +
                      std::to_string(expected_total);
        }
        ctx.push("inventory", ok, detail.empty() ? inventory_to_json(inv).dump() : detail);
    }
    if (expected.contains("total_delta")) {
        int want = expected.at("total_delta").get<int>();
        ctx.push("total_delta", inv.total_delta == want,
                 "got " + std::to_string(inv.total_delta));
    }
}

void verify_curve_fixture(Ctx& ctx, const Json& fx, const Json& expected) {
    ParsedCurve pc = curve_from_json(fx.at("curve"));
    std::vector<InventoryEntry> extra;
    if (fx.contains("extra_entries")) extra = extra_entries_from_json(fx.at("extra_entries"));
    std::optional<ComponentModel> model;
    if (fx.contains("component_model"))
        model = component_model_from_json(fx.at("component_model"));

    int genus = pc.weier ? arithmetic_genus(*pc.weier) : arithmetic_genus(*pc.spec);
    if (expected.contains("genus"))
        ctx.push("genus", genus == expected.at("genus").get<int>(),
                 "got " + std::to_string(genus));

    if (expected.contains("ribbon")) {
        bool want = expected.at("ribbon").get<bool>();
        bool got = false;
        if (pc.weier) got = pc.weier->f.is_zero();
        else got = curve_structure(*pc.spec, extra).ribbon;
        ctx.push("ribbon", got == want, got ? "ribbon" : "reduced");
    }

    bool want_inventory = expected.contains("inventory") || expected.contains("total_delta") ||
                          expected.contains("budget_certified") ||
                          expected.contains("separating") ||
                          expected.contains("warnings_contains");
    if (want_inventory) {
        SingularityInventory inv = fixture_inventory(pc, extra);
        if (model && !pc.weier) genus_budget_check(inv, *model, genus);
        check_inventory_expectation(ctx, expected, inv);
        if (expected.contains("budget_certified"))
            ctx.push("budget_certified",
                     inv.certified_complete == expected.at("budget_certified").get<bool>(),
                     inv.certified_complete ? "certified" : "not certified");
        if (expected.contains("separating")) {
            bool ok = true;
            for (auto& idx : expected.at("separating")) {
                if (!model) { ok = false; break; }
                if (!separating_check(inv, idx.get<int>(), *model)) ok = false;
            }
            ctx.push("separating", ok);
        }
        if (expected.contains("warnings_contains")) {
            std::string needle = expected.at("warnings_contains").get<std::string>();
            bool found = std::any_of(inv.warnings.begin(), inv.warnings.end(),
                                     [&](const std::string& w) {
                                         return w.find(needle) != std::string::npos;
                                     });
            ctx.push("warnings", found);
        }
    }

    if (expected.contains("chow") || expected.contains("vgit")) {
        ChowInput in = chow_input_from_curve(*pc.spec, extra, model);
        if (expected.contains("chow")) {
            auto v = chow_stability(in);
            auto want = status_from_string(expected.at("chow").get<std::string>());
            ctx.push("chow", v.status == want, verdict_to_json(v).dump());
        }
        if (expected.contains("vgit")) {
            auto v = last_chamber_vgit(in);
            auto want = status_from_string(expected.at("vgit").get<std::string>());
            ctx.push("vgit", v.status == want, verdict_to_json(v).dump());
        }
    }

    if (expected.contains("binary_git")) {
        if (!pc.weier) throw structural_error("binary_git expectation needs a Weierstrass curve");
        auto v = binary_form_git(*pc.weier);
        auto want = status_from_string(expected.at("binary_git").get<std::string>());
        ctx.push("binary_git", v.status == want, verdict_to_json(v).dump());
    }
}

void verify_comb_fixture(Ctx& ctx, const Json& fx, const Json& expected) {
    CombCurve c = comb_curve_from_json(fx.at("comb"));
    if (expected.contains("genus"))
        ctx.push("genus", c.arithmetic_genus() == expected.at("genus").get<int>(),
                 "got " + std::to_string(c.arithmetic_genus()));
    for (auto& item : expected.value("alpha", Json::array())) {
        AlphaQuery q = item.contains("tag")
                           ? AlphaQuery::of_tag(item.at("tag").get<std::string>())
                           : AlphaQuery::of(rational_from_json(item.at("alpha")));
        auto v = alpha_stability(c, q);
        auto want = status_from_string(item.at("verdict").get<std::string>());
        std::string label = item.contains("tag") ? item.at("tag").get<std::string>()
                                                 : to_string(*q.value);
        ctx.push("alpha " + label, v.status == want, verdict_to_json(v).dump());
    }
}

void verify_s2a5_fixture(Ctx& ctx, const Json& fx, const Json& expected) {
    auto params_of = [&](const Json& j) {
        S2A5Params p;
        p.a = rational_from_json(j.at(0));
        p.b0 = rational_from_json(j.at(1));
        p.b1 = rational_from_json(j.at(2));
        p.b2 = rational_from_json(j.at(3));
        p.b3 = rational_from_json(j.at(4));
        return p;
    };
    S2A5Params p1 = params_of(fx.at("params").at(0));
    S2A5Params p2 = params_of(fx.at("params").at(1));
    auto v = s2a5_family_filter(p1, p2);
    auto want = status_from_string(expected.at("s2a5").get<std::string>());
    ctx.push("s2a5", v.status == want, verdict_to_json(v).dump());
    if (expected.contains("component_inventory")) {
        WeierstrassCurve w = s2a5_component_curve(p1);
        auto inv = weierstrass_singularities(w);
        check_inventory_expectation(ctx, expected.at("component_inventory"), inv);
        ctx.push("component_genus", arithmetic_genus(w) == 2);
        ctx.push("component_budget", inv.certified_complete);
    }
}

void verify_tc_fixture(Ctx& ctx, const Json& fx, const Json& expected) {
    std::vector<Rational> b;
    for (auto& q : fx.at("b")) b.push_back(rational_from_json(q));
    auto report = verify_test_configuration(a4_cone_family(b));
    bool want = expected.value("test_configuration_passes", true);
    ctx.push("test_configuration", report.all_pass() == want, tc_report_to_json(report).dump());
}

void verify_limit_fixture(Ctx& ctx, const Json& fx, const Json& expected) {
    ParsedCurve pc = curve_from_json(fx.at("curve"));
    const CurveSpec& spec = *pc.spec;
    auto vars = spec.equation.vars();
    OnePS rho;
    for (auto& [name, w] : fx.at("weights").items()) {
        auto idx = vars->index_of(name);
        if (!idx) throw parse_error("weight names an unknown variable " + name);
        rho.weights[*idx] = w.get<int>();
    }
    MPoly lim = one_ps_limit(spec.equation, rho);
    MPoly want = parse_poly(expected.at("limit").get<std::string>(), vars);
    ctx.push("limit", lim == want, lim.str());
}

} // namespace

std::vector<FixtureOutcome> verify_fixture(const Json& fixture) {
    std::vector<FixtureOutcome> out;
    Ctx ctx{fixture.value("id", "<unnamed>"), &out};
    try {
        if (!fixture.contains("expected"))
            throw parse_error("fixture has no expected block");
        const Json& expected = fixture.at("expected");
        // every expectation must resolve to registered claims
        if (!expected.contains("claims") || expected.at("claims").empty())
            throw parse_error("fixture expectation cites no claims");
        for (auto& claim : expected.at("claims")) {
            if (!claims_registry().count(claim.get<std::string>()))
                throw parse_error("unknown claim id " + claim.get<std::string>());
        }
        std::string kind = fixture.value("kind", "curve");
        if (kind == "curve") verify_curve_fixture(ctx, fixture, expected);
        else if (kind == "comb_curve") verify_comb_fixture(ctx, fixture, expected);
        else if (kind == "s2a5_family") verify_s2a5_fixture(ctx, fixture, expected);
        else if (kind == "test_configuration") verify_tc_fixture(ctx, fixture, expected);
        else if (kind == "limit") verify_limit_fixture(ctx, fixture, expected);
        else throw parse_error("unknown fixture kind " + kind);
        if (out.empty()) ctx.push("no-checks", false, "fixture ran no checks");
    } catch (const std::exception& e) {
        ctx.push("error", false, e.what());
    }
    return out;
}

bool CorpusReport::all_pass() const {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const FixtureOutcome& o) { return o.pass; });
}

Json CorpusReport::to_json() const {
    Json arr = Json::array();
    for (auto& o : outcomes)
        arr.push_back({{"fixture", o.fixture},
                       {"check", o.check},
                       {"pass", o.pass},
                       {"detail", o.detail}});
    return Json{{"outcomes", arr}, {"all_pass", all_pass()}};
}

CorpusReport verify_corpus_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    CorpusReport report;
    std::vector<fs::path> files;
    if (!fs::exists(dir)) {
        report.outcomes.push_back({"<corpus>", "directory", false, dir + " does not exist"});
        return report;
    }
    for (auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (auto& path : files) {
        std::ifstream in(path);
        Json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            report.outcomes.push_back({path.filename().string(), "parse", false, e.what()});
            continue;
        }
        if (doc.is_array())
            for (auto& fx : doc) {
                auto sub = verify_fixture(fx);
                report.outcomes.insert(report.outcomes.end(), sub.begin(), sub.end());
            }
        else {
            auto sub = verify_fixture(doc);
            report.outcomes.insert(report.outcomes.end(), sub.begin(), sub.end());
        }
    }
    // the divisor-class identity suite runs with every corpus verification
    auto ids = verify_identities();
    for (auto& item : ids.items)
        report.outcomes.push_back({"<picard>", item.id, item.pass,
                                   item.pass ? "" : item.lhs + " vs " + item.rhs});
    // wall table images under the slope map
    bool slopes = t_of_alpha(Rational(5, 9)) == Rational(2, 3) &&
                  t_of_alpha(Rational(23, 44)) == Rational(6, 11) &&
                  t_of_alpha(Rational(1, 2)) == Rational(2, 5) &&
                  t_of_alpha(Rational(29, 60)) == Rational(2, 9) &&
                  t_of_alpha(Rational(8, 17)) == 0;
    report.outcomes.push_back({"<picard>", "wall-slopes", slopes, ""});
    std::sort(report.outcomes.begin(), report.outcomes.end(),
              [](const FixtureOutcome& a, const FixtureOutcome& b) {
                  if (a.fixture != b.fixture) return a.fixture < b.fixture;
                  return a.check < b.check;
              });
    return report;
}

} // namespace g4

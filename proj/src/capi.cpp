#include "genus4/genus4.h"

#include "corpus.hpp"
#include "degeneration.hpp"
#include "errors.hpp"
#include "poly_parse.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

using namespace g4;

struct g4_curve {
    ParsedCurve value;
};

struct g4_report {
    g4_status status = G4_OK;
    std::string json;
};

namespace {

thread_local std::string t_last_error;

g4_status fail(g4_status s, const std::string& msg) {
    t_last_error = msg;
    return s;
}

g4_status run(g4_report** out, const std::function<Json()>& body) {
    if (!out) return fail(G4_ERR_ARGUMENT, "null output parameter");
    *out = nullptr;
    try {
        Json j = body();
        auto* rep = new g4_report;
        rep->json = j.dump(2);
        rep->status = G4_OK;
        *out = rep;
        return G4_OK;
    } catch (const parse_error& e) {
        return fail(G4_ERR_PARSE, e.what());
    } catch (const domain_error& e) {
        return fail(G4_ERR_DOMAIN, e.what());
    } catch (const structural_error& e) {
        return fail(G4_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(G4_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

struct ClassifyOptions {
    std::vector<InventoryEntry> extra;
    std::optional<ComponentModel> model;
};

ClassifyOptions parse_options(const char* options_json) {
    ClassifyOptions out;
    if (!options_json || !*options_json) return out;
    Json j = Json::parse(options_json);
    if (j.contains("extra_entries")) out.extra = extra_entries_from_json(j.at("extra_entries"));
    if (j.contains("component_model"))
        out.model = component_model_from_json(j.at("component_model"));
    return out;
}

Json classify_json(const ParsedCurve& pc, const ClassifyOptions& opt) {
    Json j;
    if (pc.weier) {
        j["genus"] = arithmetic_genus(*pc.weier);
        j["model"] = "weierstrass";
        if (pc.weier->f.is_zero()) {
            j["ribbon"] = true;
            return j;
        }
        auto inv = weierstrass_singularities(*pc.weier);
        j["inventory"] = inventory_to_json(inv);
        return j;
    }
    const CurveSpec& spec = *pc.spec;
    j["genus"] = arithmetic_genus(spec);
    CurveStructure s = curve_structure(spec, opt.extra);
    j["quadric_rank"] = s.quadric_rank;
    j["ribbon"] = s.ribbon;
    if (s.ribbon) return j;
    j["triborough"] = s.triborough;
    if (s.vertex_entry) j["vertex"] = germ_class_to_json(*s.vertex_entry);
    SingularityInventory inv = s.inventory;
    if (opt.model) genus_budget_check(inv, *opt.model, arithmetic_genus(spec));
    j["inventory"] = inventory_to_json(inv);
    return j;
}

} // namespace

extern "C" {

g4_status g4_curve_parse(const char* text, g4_curve** out) {
    if (!text || !out) return fail(G4_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto* c = new g4_curve{parse_curve_text(text)};
        *out = c;
        return G4_OK;
    } catch (const parse_error& e) {
        return fail(G4_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(G4_ERR_PARSE, e.what());
    }
}

g4_status g4_curve_from_json(const char* json, g4_curve** out) {
    if (!json || !out) return fail(G4_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto* c = new g4_curve{curve_from_json(Json::parse(json))};
        *out = c;
        return G4_OK;
    } catch (const std::exception& e) {
        return fail(G4_ERR_PARSE, e.what());
    }
}

g4_status g4_curve_print(const g4_curve* curve, char** out) {
    if (!curve || !out) return fail(G4_ERR_ARGUMENT, "null argument");
    try {
        *out = dup_string(print_curve_text(curve->value));
        return G4_OK;
    } catch (const std::exception& e) {
        return fail(G4_ERR_INTERNAL, e.what());
    }
}

g4_status g4_curve_to_json(const g4_curve* curve, char** out) {
    if (!curve || !out) return fail(G4_ERR_ARGUMENT, "null argument");
    try {
        *out = dup_string(curve_to_json(curve->value).dump(2));
        return G4_OK;
    } catch (const std::exception& e) {
        return fail(G4_ERR_INTERNAL, e.what());
    }
}

void g4_curve_free(g4_curve* curve) { delete curve; }
void g4_string_free(char* s) { ::free(s); }

g4_status g4_classify(const g4_curve* curve, const char* options_json, g4_report** out) {
    if (!curve) return fail(G4_ERR_ARGUMENT, "null curve");
    return run(out, [&]() {
        auto opt = parse_options(options_json);
        return classify_json(curve->value, opt);
    });
}

g4_status g4_stability(const g4_curve* curve, const char* mode, const char* options_json,
                       g4_report** out) {
    if (!curve || !mode) return fail(G4_ERR_ARGUMENT, "null argument");
    std::string m = mode;
    return run(out, [&]() -> Json {
        auto opt = parse_options(options_json);
        if (m == "binary") {
            if (!curve->value.weier)
                throw domain_error(domain_fault::unsupported,
                                   "binary-form GIT needs a Weierstrass curve");
            return verdict_to_json(binary_form_git(*curve->value.weier));
        }
        if (m == "chow" || m == "vgit") {
            if (!curve->value.spec)
                throw domain_error(domain_fault::unsupported, "no curve specification");
            ChowInput in = chow_input_from_curve(*curve->value.spec, opt.extra, opt.model);
            auto v = (m == "chow") ? chow_stability(in) : last_chamber_vgit(in);
            return verdict_to_json(v);
        }
        throw structural_error("unknown stability mode '" + m +
                               "' (expected binary, chow or vgit)");
    });
}

g4_status g4_alpha_stability(const char* comb_curve_json, const char* alpha, g4_report** out) {
    if (!comb_curve_json || !alpha) return fail(G4_ERR_ARGUMENT, "null argument");
    return run(out, [&]() -> Json {
        CombCurve c = comb_curve_from_json(Json::parse(comb_curve_json));
        AlphaQuery q = AlphaQuery::of_tag(alpha);
        auto value = parse_rational(alpha);
        if (value) q = AlphaQuery::of(*value);
        return verdict_to_json(alpha_stability(c, q));
    });
}

g4_status g4_limit(const g4_curve* curve, const char* weights_json, g4_report** out) {
    if (!curve || !weights_json) return fail(G4_ERR_ARGUMENT, "null argument");
    return run(out, [&]() -> Json {
        if (!curve->value.spec)
            throw domain_error(domain_fault::unsupported, "no curve specification");
        const MPoly& f = curve->value.spec->equation;
        if (f.is_zero())
            throw domain_error(domain_fault::unsupported,
                               "limits act on a single equation; complete intersections "
                               "are handled equation by equation");
        OnePS rho;
        Json w = Json::parse(weights_json);
        for (auto& [name, weight] : w.items()) {
            auto idx = f.vars()->index_of(name);
            if (!idx) throw structural_error("unknown variable " + name);
            rho.weights[*idx] = weight.get<int>();
        }
        MPoly lim = one_ps_limit(f, rho);
        return Json{{"limit", lim.str()}};
    });
}

g4_status g4_normal_form(const g4_curve* curve, const char* kind, g4_report** out) {
    if (!curve || !kind) return fail(G4_ERR_ARGUMENT, "null argument");
    std::string k = kind;
    return run(out, [&]() -> Json {
        if (!curve->value.spec)
            throw domain_error(domain_fault::unsupported, "no curve specification");
        const CurveSpec& spec = *curve->value.spec;
        if (!std::holds_alternative<WeightedPlaneAmbient>(spec.ambient))
            throw domain_error(domain_fault::unsupported,
                               "normal forms live on the weighted plane P(1,1,2)");
        if (k == "a3") {
            auto nf = a3_normal_form(align_vertex_tangent(spec.equation));
            return Json{{"A", to_string(nf.A)},
                        {"B", to_string(nf.B)},
                        {"h4", nf.h4.str()},
                        {"v", to_string(nf.transform.v)},
                        {"q", nf.transform.q.str()},
                        {"standard_form", nf.standard_form.str()}};
        }
        if (k == "a4") {
            auto nf = a4_vertex_normal_form(spec.equation);
            return Json{{"normalized", nf.normalized.str()}, {"h4", nf.h4.str()}};
        }
        throw structural_error("unknown normal form kind '" + k + "' (expected a3 or a4)");
    });
}

g4_status g4_picard(const char* subcommand, const char* arg, g4_report** out) {
    if (!subcommand) return fail(G4_ERR_ARGUMENT, "null subcommand");
    std::string sub = subcommand;
    std::string a = arg ? arg : "";
    return run(out, [&]() -> Json {
        auto need_rational = [&]() {
            auto q = parse_rational(a);
            if (!q) throw parse_error("expected a rational parameter, got '" + a + "'");
            return *q;
        };
        if (sub == "walls") return walls_to_json();
        if (sub == "canonical") return div_class_to_json(canonical_class());
        if (sub == "hk") return div_class_to_json(hk_divisor(need_rational()));
        if (sub == "L") {
            if (a == "2/3-eps") return div_class_to_json(L_alpha_tag(a));
            return div_class_to_json(L_alpha(need_rational()));
        }
        if (sub == "pullback")
            return div_class_to_json(vgit_pullback({need_rational(), std::nullopt}));
        if (sub == "slope") {
            Rational al = need_rational();
            return Json{{"alpha", to_string(al)}, {"t", to_string(t_of_alpha(al))}};
        }
        if (sub == "identities") {
            auto rep = verify_identities();
            Json j = identity_report_to_json(rep);
            if (!rep.all_pass())
                throw domain_error(domain_fault::inconsistent, "identity verification failed");
            return j;
        }
        throw structural_error("unknown picard subcommand '" + sub + "'");
    });
}

g4_status g4_corpus_verify(const char* dir, g4_report** out) {
    if (!dir) return fail(G4_ERR_ARGUMENT, "null directory");
    g4_status s = run(out, [&]() { return verify_corpus_dir(dir).to_json(); });
    if (s != G4_OK) return s;
    Json j = Json::parse((*out)->json);
    if (!j.value("all_pass", false)) {
        (*out)->status = G4_ERR_EXPECTATION;
        t_last_error = "corpus verification reported failures";
        return G4_ERR_EXPECTATION;
    }
    return G4_OK;
}

const char* g4_report_json(const g4_report* report) {
    return report ? report->json.c_str() : "";
}

g4_status g4_report_status(const g4_report* report) {
    return report ? report->status : G4_ERR_ARGUMENT;
}

void g4_report_free(g4_report* report) { delete report; }

const char* g4_last_error(void) { return t_last_error.c_str(); }

int g4_version_major(void) { return 1; }
int g4_version_minor(void) { return 0; }

} // extern "C"

#pragma once

#include "curves.hpp"
#include "degeneration.hpp"
#include "picard.hpp"
#include "stability.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace g4 {

using Json = nlohmann::json;

// A parsed curve: either a curve spec or a Weierstrass model.
struct ParsedCurve {
    std::optional<CurveSpec> spec;
    std::optional<WeierstrassCurve> weier;
};

// Textual grammar:
//   ambient p1xp1; eq <poly>; [component <poly>*m;]* [tag <word>;]*
//   ambient wp A B C; eq <poly>; ...      or ... weierstrass <poly>;
//   ambient ci_p3; eq <quadric>; eq <cubic>;
ParsedCurve parse_curve_text(const std::string& text);
std::string print_curve_text(const ParsedCurve& c);

Json curve_to_json(const ParsedCurve& c);
ParsedCurve curve_from_json(const Json& j);

Json germ_class_to_json(const GermClass& c);
Json inventory_to_json(const SingularityInventory& inv);
Json verdict_to_json(const StabilityVerdict& v);
Json tc_report_to_json(const TCReport& r);
Json identity_report_to_json(const IdentityReport& r);
Json walls_to_json();
Json div_class_to_json(const DivClass& d);

CombCurve comb_curve_from_json(const Json& j);
ComponentModel component_model_from_json(const Json& j);
std::vector<InventoryEntry> extra_entries_from_json(const Json& j);

// Registry of the claim identifiers a fixture expectation may cite; the
// loader rejects expectations without a known claim.
const std::map<std::string, std::string>& claims_registry();

struct FixtureOutcome {
    std::string fixture;
    std::string check;
    bool pass;
    std::string detail;
};

struct CorpusReport {
    std::vector<FixtureOutcome> outcomes;
    bool all_pass() const;
    Json to_json() const;
};

// Runs one fixture document's expected checks.
std::vector<FixtureOutcome> verify_fixture(const Json& fixture);

// Runs every *.json fixture in the directory plus the divisor-class identity
// suite; deterministic and independent of file enumeration order.
CorpusReport verify_corpus_dir(const std::string& dir);

} // namespace g4

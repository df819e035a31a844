// Command-line front end over the C API.
#include <genus4/genus4.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

int exit_code_of(g4_status s) {
    switch (s) {
    case G4_OK: return 0;
    case G4_ERR_PARSE: return 2;
    case G4_ERR_ARGUMENT: return 2;
    case G4_ERR_DOMAIN: return 3;
    case G4_ERR_EXPECTATION: return 4;
    case G4_ERR_INTERNAL: return 1;
    }
    return 1;
}

struct CurveHandle {
    g4_curve* ptr = nullptr;
    ~CurveHandle() { g4_curve_free(ptr); }
};

struct ReportHandle {
    g4_report* ptr = nullptr;
    ~ReportHandle() { g4_report_free(ptr); }
};

std::string read_source(const std::string& expr, const std::string& input) {
    if (!expr.empty()) return expr;
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

g4_status load_curve(const std::string& text, CurveHandle& h) {
    std::string trimmed = text;
    size_t a = trimmed.find_first_not_of(" \t\r\n");
    bool looks_json = a != std::string::npos && (trimmed[a] == '{' || trimmed[a] == '[');
    return looks_json ? g4_curve_from_json(text.c_str(), &h.ptr)
                      : g4_curve_parse(text.c_str(), &h.ptr);
}

// Minimal human rendering of a JSON document: indented key/value lines.
void render_pretty(const std::string& json, std::ostream& os) {
    int depth = 0;
    bool in_string = false;
    std::string line;
    auto flush = [&]() {
        if (!line.empty()) {
            os << std::string(static_cast<size_t>(depth) * 2, ' ') << line << "\n";
            line.clear();
        }
    };
    for (char c : json) {
        if (in_string) {
            if (c == '"') in_string = false;
            else line += c;
            continue;
        }
        switch (c) {
        case '"': in_string = true; break;
        case '{':
        case '[': flush(); ++depth; break;
        case '}':
        case ']': flush(); --depth; break;
        case ',': flush(); break;
        case ':': line += ": "; break;
        case '\n':
        case ' ': if (!line.empty() && line.back() != ' ') line += ' '; break;
        default: line += c;
        }
    }
    flush();
}

int emit(const ReportHandle& rep, const std::string& format) {
    const char* json = g4_report_json(rep.ptr);
    if (format == "pretty") render_pretty(json, std::cout);
    else std::cout << json << "\n";
    return exit_code_of(g4_report_status(rep.ptr));
}

int fail_with_error(g4_status s) {
    std::cerr << "error: " << g4_last_error() << "\n";
    return exit_code_of(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for genus-4 curve models"};
    app.require_subcommand(1);

    std::string expr, input, options, format = "json";
    auto add_io = [&](CLI::App* cmd, bool with_options = true) {
        cmd->add_option("--expr", expr, "inline curve description (grammar or JSON)");
        cmd->add_option("--input", input, "file with the curve description");
        if (with_options)
            cmd->add_option("--options", options,
                            "JSON options: extra_entries, component_model");
        cmd->add_option("--format", format, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));
    };

    auto* classify = app.add_subcommand("classify", "singularity inventory and structure");
    add_io(classify);

    auto* stability = app.add_subcommand("stability", "stability verdicts");
    std::string mode = "chow", alpha;
    stability->add_option("mode", mode, "binary|chow|vgit|alpha")->required();
    stability->add_option("--alpha", alpha, "rational alpha or tag 2/3-eps (alpha mode)");
    add_io(stability);

    auto* limit = app.add_subcommand("limit", "one-parameter-subgroup limit");
    std::string weights;
    limit->add_option("--weights", weights, "JSON map of variable weights")->required();
    add_io(limit, false);

    auto* normalform = app.add_subcommand("normalform", "vertex normal forms");
    std::string nfkind;
    normalform->add_option("kind", nfkind, "a3|a4")->required();
    add_io(normalform, false);

    auto* picard = app.add_subcommand("picard", "divisor-class computations");
    std::string sub, arg;
    picard->add_option("sub", sub, "walls|canonical|hk|L|pullback|slope|identities")->required();
    picard->add_option("--arg", arg, "rational parameter where needed");
    picard->add_option("--format", format, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));

    auto* corpus = app.add_subcommand("corpus", "verify the fixture corpus");
    std::string corpus_dir = "./fixtures";
    corpus->add_option("--corpus", corpus_dir, "fixtures directory (default ./fixtures)");
    corpus->add_option("--format", format, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed() || stability->parsed() || limit->parsed() ||
            normalform->parsed()) {
            bool needs_curve = !(stability->parsed() && mode == "alpha");
            CurveHandle curve;
            std::string source = read_source(expr, input);
            if (needs_curve) {
                g4_status s = load_curve(source, curve);
                if (s != G4_OK) return fail_with_error(s);
            }
            ReportHandle rep;
            g4_status s = G4_OK;
            if (classify->parsed()) {
                s = g4_classify(curve.ptr, options.empty() ? nullptr : options.c_str(), &rep.ptr);
            } else if (stability->parsed()) {
                if (mode == "alpha")
                    s = g4_alpha_stability(source.c_str(), alpha.c_str(), &rep.ptr);
                else
                    s = g4_stability(curve.ptr, mode.c_str(),
                                     options.empty() ? nullptr : options.c_str(), &rep.ptr);
            } else if (limit->parsed()) {
                s = g4_limit(curve.ptr, weights.c_str(), &rep.ptr);
            } else {
                s = g4_normal_form(curve.ptr, nfkind.c_str(), &rep.ptr);
            }
            if (s != G4_OK && !rep.ptr) return fail_with_error(s);
            return emit(rep, format);
        }
        if (picard->parsed()) {
            ReportHandle rep;
            g4_status s = g4_picard(sub.c_str(), arg.c_str(), &rep.ptr);
            if (s != G4_OK && !rep.ptr) return fail_with_error(s);
            return emit(rep, format);
        }
        if (corpus->parsed()) {
            ReportHandle rep;
            g4_status s = g4_corpus_verify(corpus_dir.c_str(), &rep.ptr);
            if (!rep.ptr) return fail_with_error(s);
            int code = emit(rep, format);
            return s == G4_OK ? code : exit_code_of(s);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

/* genus4: exact computations for genus-4 curve models.
 *
 * C interface to the core library.  All analysis results are returned as
 * reports carrying a JSON document and a status code; inputs are textual
 * (the curve grammar or JSON documents).  Handles are opaque; every object
 * returned through an out-parameter must be released with the matching
 * _free function.  All functions return G4_OK on success; on failure the
 * thread-local message of g4_last_error() describes what went wrong.
 */
#ifndef GENUS4_H
#define GENUS4_H

#include <stddef.h>

#ifndef G4_API
#if defined(_WIN32)
#define G4_API __declspec(dllexport)
#else
#define G4_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum g4_status {
    G4_OK = 0,
    G4_ERR_PARSE = 2,       /* syntax errors in curves, polynomials or JSON */
    G4_ERR_DOMAIN = 3,      /* input outside the domain of the operation */
    G4_ERR_EXPECTATION = 4, /* a verification ran and found failures */
    G4_ERR_ARGUMENT = 5,    /* null pointers, unknown modes */
    G4_ERR_INTERNAL = 6
} g4_status;

typedef struct g4_curve g4_curve;
typedef struct g4_report g4_report;

/* --- curves ------------------------------------------------------------ */

/* Parses the textual grammar:
 *   ambient p1xp1; eq <poly>; [component <poly>*m;]* [tag <word>;]*
 *   ambient wp A B C; eq <poly>;       (weighted plane)
 *   ambient wp 1 1 G1; weierstrass <binary form>;
 *   ambient ci_p3; eq <quadric>; eq <cubic>;
 */
G4_API g4_status g4_curve_parse(const char* text, g4_curve** out);

/* Parses the JSON form {ambient, equations[], components?, tags[], weierstrass?}. */
G4_API g4_status g4_curve_from_json(const char* json, g4_curve** out);

/* Canonical textual form; round-trips through g4_curve_parse. */
G4_API g4_status g4_curve_print(const g4_curve* curve, char** out);
G4_API g4_status g4_curve_to_json(const g4_curve* curve, char** out);

G4_API void g4_curve_free(g4_curve* curve);
G4_API void g4_string_free(char* s);

/* --- analysis ----------------------------------------------------------- */

/* Singularity inventory, genus, structural flags.  options_json may be NULL
 * or {"extra_entries": [...], "component_model": {...}} to supply
 * Galois-orbit entries and the component data certifying the genus budget. */
G4_API g4_status g4_classify(const g4_curve* curve, const char* options_json, g4_report** out);

/* mode: "binary" (Weierstrass curves), "chow", "vgit".
 * options_json as for g4_classify. */
G4_API g4_status g4_stability(const g4_curve* curve, const char* mode, const char* options_json,
                       g4_report** out);

/* Combinatorial alpha-stability; the curve is a JSON document
 * {components:[{genus,..}], singularities:[...]}; alpha is "p/q" or the
 * chamber tag "2/3-eps". */
G4_API g4_status g4_alpha_stability(const char* comb_curve_json, const char* alpha, g4_report** out);

/* One-parameter-subgroup limit; weights_json maps variable names to integer
 * weights, e.g. {"x":0,"y":-1,"z":1}. */
G4_API g4_status g4_limit(const g4_curve* curve, const char* weights_json, g4_report** out);

/* kind: "a3" (tacnode standard form) or "a4" (ramphoid form at the vertex). */
G4_API g4_status g4_normal_form(const g4_curve* curve, const char* kind, g4_report** out);

/* subcommand: "walls", "canonical", "hk", "L", "pullback", "slope",
 * "identities".  arg carries the parameter where one is needed ("p/q", or
 * the tag "2/3-eps" for "L"). */
G4_API g4_status g4_picard(const char* subcommand, const char* arg, g4_report** out);

/* Runs every fixture in the directory plus the divisor-class identity
 * suite.  Returns G4_ERR_EXPECTATION when some check fails; the report
 * carries the full outcome list either way. */
G4_API g4_status g4_corpus_verify(const char* dir, g4_report** out);

/* --- reports ------------------------------------------------------------ */

/* The JSON document of the report; owned by the report. */
G4_API const char* g4_report_json(const g4_report* report);
G4_API g4_status g4_report_status(const g4_report* report);
G4_API void g4_report_free(g4_report* report);

/* Thread-local description of the last error returned by any call. */
G4_API const char* g4_last_error(void);

G4_API int g4_version_major(void);
G4_API int g4_version_minor(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GENUS4_H */

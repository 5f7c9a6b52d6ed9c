/* C interface to the ms4lab shared library.
 *
 * Handles are opaque and owned by the caller (free with the matching _free).
 * Every call returns an ms4lab_status; on failure ms4lab_last_error() holds a
 * message for the calling thread. Strings returned through char** are
 * heap-allocated and released with ms4lab_string_free. Reports are JSON. */
#ifndef MS4LAB_H
#define MS4LAB_H

#include <stdint.h>

#if defined(_WIN32)
#define MS4LAB_API __declspec(dllexport)
#else
#define MS4LAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ms4lab_frame ms4lab_frame;
typedef struct ms4lab_formula ms4lab_formula;

typedef enum ms4lab_status {
    MS4LAB_OK = 0,
    MS4LAB_ERR_ARGUMENT = 1,      /* bad argument or recipe */
    MS4LAB_ERR_PARSE = 2,         /* formula or JSON syntax */
    MS4LAB_ERR_FRAME = 3,         /* relations do not form an MS4-frame */
    MS4LAB_ERR_IO = 4,
    MS4LAB_ERR_BUDGET = 5,        /* search budget exceeded */
    MS4LAB_ERR_PRECONDITION = 6,  /* e.g. filtration on a non-chain frame */
    MS4LAB_ERR_ALREADY_VALID = 7, /* no countermodel to work from */
    MS4LAB_ERR_INTERNAL = 99
} ms4lab_status;

typedef enum ms4lab_verdict {
    MS4LAB_VALID = 0,
    MS4LAB_INVALID = 1,
    MS4LAB_BUDGET_EXCEEDED = 2
} ms4lab_verdict;

typedef struct ms4lab_budget {
    uint64_t max_valuations; /* default 2^30 */
    int cluster_cap;         /* default 20 */
    int path_cap;            /* default 64 */
    int threads;             /* default from MS4LAB_THREADS, else hardware */
} ms4lab_budget;

typedef struct ms4lab_suite_options {
    int max_worlds;
    int random_frames;
    int random_max_worlds;
    uint64_t seed;
    uint64_t max_valuations;
    int cluster_cap;
    int threads;
    int count; /* 0 = suite default */
} ms4lab_suite_options;

MS4LAB_API const char* ms4lab_version(void);
MS4LAB_API const char* ms4lab_last_error(void);
MS4LAB_API void ms4lab_string_free(char* s);

MS4LAB_API void ms4lab_budget_default(ms4lab_budget* out);
MS4LAB_API void ms4lab_suite_options_default(ms4lab_suite_options* out);

/* Frames. Recipes: chain:N grid:RxC product:chainN,kK translate:<file>
 * random:n=5,seed=42 enum:N:I file:<path> */
MS4LAB_API ms4lab_status ms4lab_frame_from_recipe(const char* spec, ms4lab_frame** out);
MS4LAB_API ms4lab_status ms4lab_frame_from_json(const char* json, ms4lab_frame** out);
/* S5_2 JSON {"worlds","E1","E2"} translated to a depth-3 MS4-frame. */
MS4LAB_API ms4lab_status ms4lab_frame_translate_json(const char* s52_json, ms4lab_frame** out);
MS4LAB_API ms4lab_status ms4lab_frame_to_json(const ms4lab_frame* f, char** out);
MS4LAB_API int ms4lab_frame_size(const ms4lab_frame* f);
MS4LAB_API void ms4lab_frame_free(ms4lab_frame* f);

/* Formulas, from text or an axiom name (ms4, bar, mcas, grz, sc, ed, P<n>, P0_<n>, rp<m>). */
MS4LAB_API ms4lab_status ms4lab_formula_parse(const char* text, ms4lab_formula** out);
MS4LAB_API ms4lab_status ms4lab_formula_axiom(const char* name, ms4lab_formula** out);
MS4LAB_API ms4lab_status ms4lab_formula_print(const ms4lab_formula* phi, char** out);
MS4LAB_API void ms4lab_formula_free(ms4lab_formula* phi);

/* Reports. `budget` may be NULL for defaults. */
MS4LAB_API ms4lab_status ms4lab_check(const ms4lab_frame* f, const ms4lab_formula* phi, const ms4lab_budget* budget,
                                      ms4lab_verdict* verdict, char** report);
MS4LAB_API ms4lab_status ms4lab_classify(const ms4lab_frame* f, const ms4lab_budget* budget, char** report);
MS4LAB_API ms4lab_status ms4lab_layers(const ms4lab_frame* f, char** report);
MS4LAB_API ms4lab_status ms4lab_path(const ms4lab_frame* f, int proper, const ms4lab_budget* budget, char** report);
/* `valuation_json` ({"p": [0, 2]}) may be NULL: the first countermodel is used. */
MS4LAB_API ms4lab_status ms4lab_filtrate(const ms4lab_frame* f, const ms4lab_formula* phi, const char* valuation_json,
                                         const ms4lab_budget* budget, char** report);
MS4LAB_API ms4lab_status ms4lab_fmp(const ms4lab_frame* f, const ms4lab_formula* phi, const ms4lab_budget* budget,
                                    char** report);
/* Family: recipes separated by ';', with ranges chain:A..B and grid:A..B (square grids). */
MS4LAB_API ms4lab_status ms4lab_growth(const char* family, int k_max, int trials, uint64_t seed, char** csv);
/* Subalgebra generated by the lower staircase in each square grid of the range. */
MS4LAB_API ms4lab_status ms4lab_staircase_growth(int k_lo, int k_hi, char** csv);
MS4LAB_API ms4lab_status ms4lab_verify(const char* suite, const ms4lab_suite_options* opts, int* passed,
                                       char** report);
MS4LAB_API ms4lab_status ms4lab_export_dot(const ms4lab_frame* f, char** dot);

#ifdef __cplusplus
}
#endif

#endif

/* C interface to the hullcheck library. Strings returned through char**
 * belong to the caller and are released with hc_string_free; datasets with
 * hc_dataset_free. On failure a function returns a nonzero hc_error and
 * hc_last_error() describes it (per thread). */
#ifndef HULLCHECK_H
#define HULLCHECK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HC_API __declspec(dllexport)
#elif defined(__GNUC__)
#define HC_API __attribute__((visibility("default")))
#else
#define HC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hc_dataset hc_dataset;

typedef enum hc_error {
  HC_OK = 0,
  HC_E_PARSE,
  HC_E_VALIDATION,
  HC_E_NO_MIXED,
  HC_E_NONFINITE,
  HC_E_DEGENERATE,
  HC_E_NOT_OVERLAPPING,
  HC_E_NOT_MINIMAL,
  HC_E_NOT_TYPE1,
  HC_E_SINGULAR,
  HC_E_BUDGET,
  HC_E_COMPOSITION,
  HC_E_UNKNOWN_BASIS,
  HC_E_BAD_SHAPE,
  HC_E_DIMENSION,
  HC_E_INVALID_ARGUMENT,
  HC_E_IO,
  HC_E_INTERNAL
} hc_error;

/* Values double as process exit codes. */
typedef enum hc_status {
  HC_OVERLAP = 0,
  HC_QUASI = 2,
  HC_COMPLETE = 3,
  HC_NO_MIXED = 4
} hc_status;

typedef struct hc_options {
  double epsilon;
  int max_iter;
  double newton_tol;
  double grad_tol;
} hc_options;

HC_API void hc_options_default(hc_options* opts);
HC_API const char* hc_last_error(void);
HC_API void hc_string_free(char* s);

/* datasets */
HC_API hc_error hc_dataset_read_file(const char* path, hc_dataset** out);
HC_API hc_error hc_dataset_read_buffer(const char* text, int json, hc_dataset** out);
HC_API hc_error hc_dataset_from_arrays(size_t n, size_t d, const double* x, const int* y,
                                       hc_dataset** out);
HC_API void hc_dataset_free(hc_dataset* data);
HC_API size_t hc_dataset_rows(const hc_dataset* data);
HC_API size_t hc_dataset_cols(const hc_dataset* data);
HC_API hc_error hc_dataset_to_text(const hc_dataset* data, int json, char** out);
HC_API hc_error hc_dataset_shuffle(const hc_dataset* data, uint64_t seed, hc_dataset** out);
/* "w0", "w1", "w2", "a1" */
HC_API hc_error hc_fixture(const char* name, hc_dataset** out);

/* status */
HC_API hc_error hc_classify(const hc_dataset* data, const hc_options* opts, hc_status* status,
                            char** report_json);
HC_API hc_error hc_lp_separation(const hc_dataset* data, int* separated, char** report_json);
HC_API hc_error hc_origin_interior(const hc_dataset* data, int* interior);
/* Classifier and both LP oracles side by side. */
HC_API hc_error hc_compare_lp(const hc_dataset* data, const hc_options* opts, int* agree,
                              char** report_json);

/* minimal configurations */
HC_API hc_error hc_deflate(const hc_dataset* data, int use_seed, uint64_t seed,
                           const hc_options* opts, hc_dataset** core, char** sidecar_json);
HC_API hc_error hc_removal_depths(const hc_dataset* data, int k_max, const hc_options* opts,
                                  char** report_json);

/* forms */
HC_API hc_error hc_interim_form(const hc_dataset* data, const hc_options* opts, char** csv);
HC_API hc_error hc_standard_form(const hc_dataset* data, const hc_options* opts,
                                 char** report_json);
HC_API hc_error hc_equidistant_form(const hc_dataset* data, const hc_options* opts,
                                    hc_dataset** out);

/* generators */
HC_API hc_error hc_gen_standard(int d1, int d0, hc_dataset** out);
HC_API hc_error hc_gen_equidistant(int d1, int d0, hc_dataset** out);
HC_API hc_error hc_gen_unit_simplex(int n, char** csv);
HC_API hc_error hc_gen_quasi(size_t n, int d, uint64_t seed, hc_dataset** out);
/* Catalog ids joined by '+', a trailing ' flips responses: "b+b'". */
HC_API hc_error hc_gen_add(const char* spec, hc_dataset** out);

/* catalog */
HC_API hc_error hc_catalog_list(char** json);
HC_API hc_error hc_catalog_entry(const char* id, hc_dataset** out);
HC_API hc_error hc_catalog_search(const char* basis, int middle, int dimension,
                                  const hc_options* opts, char** report_json);
HC_API hc_error hc_identify(const hc_dataset* data, char** report_json);

/* rendering */
HC_API hc_error hc_render_svg(const hc_dataset* data, int iso, double icon_size, int grid,
                              char** svg);
/* Comma-separated catalog ids. */
HC_API hc_error hc_render_catalog(const char* ids, int iso, double icon_size, int grid,
                                  char** svg);

#ifdef __cplusplus
}
#endif

#endif

#ifndef CHIRAL_CHIRAL_H
#define CHIRAL_CHIRAL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CHIRAL_API __declspec(dllexport)
#else
#define CHIRAL_API __attribute__((visibility("default")))
#endif

typedef enum {
  CHIRAL_OK = 0,
  CHIRAL_ERR_ARGUMENT = 1,   /* null handle or malformed argument */
  CHIRAL_ERR_INPUT = 2,      /* model file or option error */
  CHIRAL_ERR_VALIDATION = 3, /* Jacobi, anchor or transition data rejected */
  CHIRAL_ERR_CAP = 4,        /* a computation left the weight / poly-degree caps */
  CHIRAL_ERR_MISMATCH = 5,
  CHIRAL_ERR_INTERNAL = 6
} chiral_status;

typedef struct chiral_model chiral_model;
typedef struct chiral_report chiral_report;

typedef struct {
  int max_weight;      /* required, >= 0 */
  int max_poly_degree; /* required, >= 0 */
  int jobs;            /* worker threads, >= 1 */
  int has_min_degree;
  int min_degree;
  int has_max_degree;
  int max_degree;
} chiral_options;

CHIRAL_API void chiral_options_init(chiral_options* opt);

CHIRAL_API chiral_status chiral_model_load(const char* path, chiral_model** out);
CHIRAL_API chiral_status chiral_model_parse(const char* json_text, chiral_model** out);
CHIRAL_API void chiral_model_free(chiral_model* model);
/* "weil", "algebroid", "atlas" or "tensor"; owned by the model. */
CHIRAL_API const char* chiral_model_kind(const chiral_model* model);

/* suite: free-fields | gamma | weil | cartan | algebroid | atlas | wstar */
CHIRAL_API chiral_status chiral_verify(const chiral_model* model, const char* suite, const chiral_options* opt,
                                       chiral_report** out);
/* target: chiral | basic | equivariant | small-cartan */
CHIRAL_API chiral_status chiral_cohomology(const chiral_model* model, const char* target,
                                           const chiral_options* opt, chiral_report** out);

CHIRAL_API int chiral_report_passed(const chiral_report* report);
CHIRAL_API int chiral_report_check_count(const chiral_report* report);
/* JSON text, owned by the report. */
CHIRAL_API const char* chiral_report_json(const chiral_report* report);
CHIRAL_API double chiral_report_seconds(const chiral_report* report);
CHIRAL_API void chiral_report_free(chiral_report* report);

/* Message of the last failing call on this thread; empty when none. */
CHIRAL_API const char* chiral_last_error(void);
CHIRAL_API const char* chiral_status_name(chiral_status status);

#ifdef __cplusplus
}
#endif

#endif

#ifndef HGO_H
#define HGO_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define HGO_API __attribute__((visibility("default")))
#else
#define HGO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hgo_status {
    HGO_OK = 0,
    HGO_E_INVALID = 1,  /* bad argument: signature, sizes, null pointers */
    HGO_E_PARSE = 2,    /* malformed text input */
    HGO_E_FAILED = 3,   /* a check ran and failed; see hgo_last_error */
    HGO_E_INTERNAL = 4
} hgo_status;

typedef enum hgo_verdict {
    HGO_NATURALLY_REDUCTIVE = 0,
    HGO_GO_WITNESSED = 1,
    HGO_NOT_GO = 2,
    HGO_UNDECIDED = 3
} hgo_verdict;

typedef struct hgo_algebra hgo_algebra;
typedef struct hgo_certificate hgo_certificate;

typedef struct hgo_classify_options {
    size_t multiplicity;
    int height;     /* counterexample search bound */
    size_t probes;  /* random probes per center class for (3,4) */
    uint64_t seed;
} hgo_classify_options;

/* Message of the last failing call on this thread ("" if none). */
HGO_API const char* hgo_last_error(void);
/* Frees strings returned through char** out-parameters. */
HGO_API void hgo_string_free(char* s);
HGO_API const char* hgo_verdict_name(hgo_verdict v);
HGO_API void hgo_classify_options_init(hgo_classify_options* opts);

HGO_API hgo_status hgo_algebra_create(int r, int s, size_t multiplicity, hgo_algebra** out);
HGO_API void hgo_algebra_free(hgo_algebra* alg);
HGO_API hgo_status hgo_algebra_dims(const hgo_algebra* alg, size_t* z_dim, size_t* v_dim);
HGO_API hgo_status hgo_algebra_bracket_table(const hgo_algebra* alg, char** out);

HGO_API hgo_status hgo_classify(int r, int s, const hgo_classify_options* opts, hgo_certificate** out);
HGO_API hgo_status hgo_certificate_parse(const char* json, hgo_certificate** out);
HGO_API void hgo_certificate_free(hgo_certificate* cert);
HGO_API hgo_status hgo_certificate_verdict(const hgo_certificate* cert, hgo_verdict* out);
HGO_API hgo_status hgo_certificate_json(const hgo_certificate* cert, char** out);
/* One-paragraph text rendering. */
HGO_API hgo_status hgo_certificate_text(const hgo_certificate* cert, char** out);
/* HGO_OK if the stored evidence re-verifies, HGO_E_FAILED otherwise. */
HGO_API hgo_status hgo_certificate_replay(const hgo_certificate* cert);

/* what: "ell", "dim" or "omega"; grid 0..max_r x 0..max_s. */
HGO_API hgo_status hgo_table(const char* what, int max_r, int max_s, char** out);

/* Identity suite, strong condition and geodesic checks for (3,4). The JSON is
   written even when a check fails (status HGO_E_FAILED). */
HGO_API hgo_status hgo_certify_n34(uint64_t seed, size_t probes, const char* minors_text, char** out_json);

/* Comma-separated rationals or decimals for the initial velocity. */
HGO_API hgo_status hgo_geodesic_csv(const hgo_algebra* alg, const char* zdot, const char* xdot, double t_end, int samples,
                                    int steps, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* HGO_H */

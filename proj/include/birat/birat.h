#ifndef BIRAT_BIRAT_H
#define BIRAT_BIRAT_H

#include <stdint.h>

#if defined(BIRAT_BUILDING_LIBRARY)
#define BIRAT_API __attribute__((visibility("default")))
#else
#define BIRAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BIRAT_OK = 0,
  BIRAT_CHECKS_FAILED = 1,   /* the report has at least one failed check */
  BIRAT_USAGE = 2,           /* invalid configuration or arguments */
  BIRAT_INTERNAL = 3,        /* unexpected failure; see birat_last_error */
} birat_status;

typedef struct birat_config birat_config;
typedef struct birat_report birat_report;
typedef struct birat_ideal birat_ideal;

BIRAT_API const char* birat_version(void);

/* Message of the most recent failing call on this thread, or "". */
BIRAT_API const char* birat_last_error(void);

/* Strings returned by the library are released with this. */
BIRAT_API void birat_string_free(char* s);

/* pipeline: "verify-prop11", "build", "verify-thm31", "table" or "cremona". */
BIRAT_API birat_config* birat_config_new(const char* pipeline);
BIRAT_API void birat_config_free(birat_config* config);

/* Keys: variety, prime, field ("q" for the rationals), seed, retries, mode,
   special ("0"/"1"), cache_dir. Unknown keys and malformed values give BIRAT_USAGE. */
BIRAT_API birat_status birat_config_set(birat_config* config, const char* key, const char* value);

/* Runs the pipeline. On BIRAT_OK or BIRAT_CHECKS_FAILED *report is set; on
   BIRAT_USAGE or BIRAT_INTERNAL it is NULL. */
BIRAT_API birat_status birat_run(const birat_config* config, birat_report** report);

BIRAT_API int birat_report_exit_code(const birat_report* report);
BIRAT_API int birat_report_count(const birat_report* report, const char* status);
/* The report as JSON; indent < 0 gives a single line. */
BIRAT_API char* birat_report_json(const birat_report* report, int indent);
BIRAT_API void birat_report_free(birat_report* report);

/* An ideal from its text form: a "ring fp <p> nvars <n> ..." or "ring q nvars <n> ..."
   header line followed by one generator per line. */
BIRAT_API birat_status birat_ideal_parse(const char* text, birat_ideal** ideal);
BIRAT_API void birat_ideal_free(birat_ideal* ideal);
/* Reduced Groebner basis in the same text form. */
BIRAT_API birat_status birat_ideal_groebner(const birat_ideal* ideal, char** text);
/* Projective dimension, degree and Hilbert polynomial of the quotient ring. */
BIRAT_API birat_status birat_ideal_hilbert(const birat_ideal* ideal, int* dimension, int64_t* degree,
                                           char** polynomial);
/* *result = 1 when the polynomial lies in the ideal. */
BIRAT_API birat_status birat_ideal_contains(const birat_ideal* ideal, const char* polynomial, int* result);

#ifdef __cplusplus
}
#endif

#endif

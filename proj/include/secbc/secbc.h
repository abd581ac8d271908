#ifndef SECBC_H
#define SECBC_H

/* C interface to the secbc library. Every function returns a status code;
 * on failure secbc_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * secbc_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SECBC_API __declspec(dllexport)
#else
#define SECBC_API __attribute__((visibility("default")))
#endif

typedef enum {
    SECBC_OK = 0,
    SECBC_INVALID_ARGUMENT = 1,
    SECBC_RESOURCE = 2,
    SECBC_PARSE = 3,
    SECBC_VALIDATION = 4,
    SECBC_ENCODER_FAILURE = 5,
    SECBC_INTERNAL = 6
} secbc_status;

typedef struct secbc_channel secbc_channel;
typedef struct secbc_region secbc_region;
typedef struct secbc_system secbc_system;

SECBC_API const char* secbc_version(void);
SECBC_API const char* secbc_status_name(int status);
/* Message of the last failed call on this thread; "" when none. */
SECBC_API const char* secbc_last_error(void);
SECBC_API void secbc_string_free(char* s);
/* Thread count used when a call is given 0 (SECBC_THREADS or hardware). */
SECBC_API unsigned secbc_default_threads(void);

/* ---- channels */
SECBC_API int secbc_channel_from_json(const char* json, secbc_channel** out);
/* "bbc", "bbc-nosec", "pd-bbc", "semi-orthogonal". */
SECBC_API int secbc_channel_preset(const char* name, secbc_channel** out);
SECBC_API int secbc_channel_to_json(const secbc_channel* ch, char** out);
SECBC_API void secbc_channel_free(secbc_channel* ch);

/* ---- regions */
/* Request JSON as documented in the README (presets, channel, family, sampler). */
SECBC_API int secbc_region_compute(const char* request_json, secbc_region** out);
/* family: inner, sd, pd, pd-nosec, dbc, nosec, nosec-restricted. sampler_json may be NULL. */
SECBC_API int secbc_region_union(const secbc_channel* ch, const char* family, double r12, double r0,
                                 const char* sampler_json, secbc_region** out);
SECBC_API int secbc_region_size(const secbc_region* r, size_t* n);
SECBC_API int secbc_region_point(const secbc_region* r, size_t k, double* r1, double* r2);
/* Largest R2 on the boundary at r1; -1 outside. */
SECBC_API int secbc_region_r2_at(const secbc_region* r, double r1, double* r2);
SECBC_API int secbc_region_hausdorff(const secbc_region* a, const secbc_region* b, double* d);
SECBC_API int secbc_region_to_csv(const secbc_region* r, char** out);
SECBC_API int secbc_region_to_json(const secbc_region* r, char** out);
SECBC_API void secbc_region_free(secbc_region* r);

/* ---- inequality systems */
SECBC_API int secbc_system_from_json(const char* json, secbc_system** out);
/* Eliminates the listed variables and removes redundant rows. */
SECBC_API int secbc_system_eliminate(const secbc_system* s, const char* const* names, size_t count,
                                     secbc_system** out);
SECBC_API int secbc_system_to_json(const secbc_system* s, char** out);
SECBC_API int secbc_system_vertices_json(const secbc_system* s, char** out);
SECBC_API void secbc_system_free(secbc_system* s);
/* System JSON plus eliminate list -> {"system", "vertices"} report. */
SECBC_API int secbc_fme_run(const char* system_json, const char* const* eliminate, size_t count, char** out);
/* Projection check of the inner-bound derivation for one auxiliary draw;
 * *match is 1 when the projected and reference polytopes agree. */
SECBC_API int secbc_thm1_derivation(uint64_t aux_seed, double r12, int* match, char** out);

/* ---- simulation */
SECBC_API int secbc_sim_resolvability(const char* spec_json, char** out);
SECBC_API int secbc_sim_bc(const char* spec_json, char** out);

/* ---- scalar closed forms */
SECBC_API int secbc_bdp_capacities(double q, double eps, double* gp, double* fcsi);

#ifdef __cplusplus
}
#endif

#endif

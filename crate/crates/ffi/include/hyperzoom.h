#ifndef HYPERZOOM_H
#define HYPERZOOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HzStatus {
  HZ_STATUS_OK = 0,
  HZ_STATUS_NULL_POINTER = 1,
  HZ_STATUS_INVALID_ARGUMENT = 2,
  HZ_STATUS_INTERNAL = 3,
} HzStatus;

// A running filter cascade.
typedef struct HzFilter HzFilter;

// Stage list and sampling period for a filter.
typedef struct HzFilterConfig HzFilterConfig;

// Camera position: footprint `u` and altitude `v > 0`.
typedef struct HzPoint {
  double u[2];
  double v;
} HzPoint;

// Tangent vector `(du, dv)` based at `base`.
typedef struct HzVector {
  struct HzPoint base;
  double du[2];
  double dv;
} HzVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, empty after a success.
// The pointer stays valid until the next call on this thread.
const char *hz_last_error(void);

// Library version as a static NUL-terminated string.
const char *hz_version(void);

// Hyperbolic distance between `x` and `y`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_dist(const struct HzPoint *x, const struct HzPoint *y, double *out);

// Point at hyperbolic distance `s` from `x` towards `y`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_geo(const struct HzPoint *x,
                     const struct HzPoint *y,
                     double s,
                     struct HzPoint *out);

// Geodesic interpolation: `t = 0` gives `x`, `t = 1` gives `y`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_gerp(const struct HzPoint *x,
                      const struct HzPoint *y,
                      double t,
                      struct HzPoint *out);

// Hyperbolic magnitude of a tangent vector.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_hnorm(const struct HzVector *x, double *out);

// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_exp_map(const struct HzVector *x, struct HzPoint *out);

// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_log_map(const struct HzPoint *x, const struct HzPoint *y, struct HzVector *out);

// Moves `x` along the geodesic from its base to `y`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_transport(const struct HzVector *x, const struct HzPoint *y, struct HzVector *out);

// Limits the hyperbolic magnitude of `x` to `c >= 0`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_clipvec(const struct HzVector *x, double c, struct HzVector *out);

// Empty stage list sampled every `period` seconds. Returns null for a
// non-positive period. Release with `hz_filter_config_free`.
struct HzFilterConfig *hz_filter_config_new(double period);

// Default clipped cascade: a clipped one-pole stage with `c = 1`, then three
// one-pole stages, all with `alpha = 6`, at the given period.
struct HzFilterConfig *hz_filter_config_default(double period);

// # Safety
// `cfg` must be null or a live pointer from `hz_filter_config_new`.
enum HzStatus hz_filter_config_add_one_pole(struct HzFilterConfig *cfg, double alpha);

// # Safety
// `cfg` must be null or a live pointer from `hz_filter_config_new`.
enum HzStatus hz_filter_config_add_clipped_one_pole(struct HzFilterConfig *cfg,
                                                    double alpha,
                                                    double c);

// # Safety
// `cfg` must be null or a live pointer from `hz_filter_config_new`.
enum HzStatus hz_filter_config_add_two_pole(struct HzFilterConfig *cfg, double omega0, double zeta);

// # Safety
// `cfg` must be null or a pointer from `hz_filter_config_new` not yet freed.
void hz_filter_config_free(struct HzFilterConfig *cfg);

// Validates `cfg` and creates a filter resting at `y0`. The configuration
// is copied; it may be freed afterwards. Release with `hz_filter_free`.
//
// # Safety
// Pointers must be null or valid for the access their type implies.
enum HzStatus hz_filter_new(const struct HzFilterConfig *cfg,
                            const struct HzPoint *y0,
                            struct HzFilter **out);

// Advances one sample towards target `x` and writes the new output.
//
// # Safety
// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
enum HzStatus hz_filter_step(struct HzFilter *filter, const struct HzPoint *x, struct HzPoint *out);

// Current output of the last stage.
//
// # Safety
// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
enum HzStatus hz_filter_output(const struct HzFilter *filter, struct HzPoint *out);

// Puts every stage at rest at `y0`.
//
// # Safety
// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
enum HzStatus hz_filter_reset(struct HzFilter *filter, const struct HzPoint *y0);

// Largest per-step displacement of any clipped stage so far.
//
// # Safety
// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
enum HzStatus hz_filter_max_clipped_step(const struct HzFilter *filter, double *out);

// # Safety
// `filter` must be null or a pointer from `hz_filter_new` not yet freed.
void hz_filter_free(struct HzFilter *filter);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERZOOM_H */

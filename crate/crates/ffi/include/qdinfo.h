#ifndef QDINFO_H
#define QDINFO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Wall condition codes.
#define QD_DIRICHLET 0

#define QD_NEUMANN 1

typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_ARGUMENT = 2,
  QD_STATUS_NO_CONVERGENCE = 3,
  QD_STATUS_ROOT_NOT_FOUND = 4,
  QD_STATUS_NO_CROSSING = 5,
  QD_STATUS_NUMERICAL = 6,
  QD_STATUS_PANIC = 7,
} QdStatus;

// Opaque eigenstate with its position and momentum functions.
typedef struct QdState QdState;

typedef struct QdEnergy {
  double e_bar;
  double e_bbar;
} QdEnergy;

// Measures in electric (`_bar`) and magnetic (`_bbar`) units.
typedef struct QdMeasures {
  double s_rho_bar;
  double s_gamma_bar;
  double s_rho_bbar;
  double s_gamma_bbar;
  double s_total;
  double i_rho_bar;
  double i_gamma_bar;
  double i_rho_bbar;
  double i_gamma_bbar;
  double i_product;
  double o_rho_bar;
  double o_gamma_bar;
  double o_rho_bbar;
  double o_gamma_bbar;
  double o_product;
  double rms_r_bar;
  double rms_k_bar;
} QdMeasures;

typedef struct QdCrossing {
  double b_star;
  double e_bar;
  double e_bbar;
} QdCrossing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Eigenvalue of level `(n, m)` at field `b_bar`.
//
// # Safety
// `out` must be null or valid for writes.
enum QdStatus qd_eigenvalue(int32_t bc, uint32_t n, int32_t m, double b_bar, struct QdEnergy *out);

// Solve and build the state `(n, m)` at `b_bar`. The handle is written to
// `*out` and must be released with [`qd_state_free`].
//
// # Safety
// `out` must be null or valid for writes.
enum QdStatus qd_state_new(int32_t bc, uint32_t n, int32_t m, double b_bar, struct QdState **out);

// Release a state; null is ignored.
//
// # Safety
// `state` must be null or a handle from [`qd_state_new`] not yet freed.
void qd_state_free(struct QdState *state);

// Radial position function at `r` in units of the dot radius (zero outside).
//
// # Safety
// `state` must be a live handle or null; `out` null or valid for writes.
enum QdStatus qd_state_position(const struct QdState *state, double r, double *out);

// Radial momentum function at `k`.
//
// # Safety
// `state` must be a live handle or null; `out` null or valid for writes.
enum QdStatus qd_state_momentum(const struct QdState *state, double k, double *out);

// All information measures of a state.
//
// # Safety
// `state` must be a live handle or null; `out` null or valid for writes.
enum QdStatus qd_state_measures(const struct QdState *state, struct QdMeasures *out);

// Field where level `(n, m)` meets `(n, m-1)`, for `m <= 0`.
//
// # Safety
// `out` must be null or valid for writes.
enum QdStatus qd_find_crossing(int32_t bc, uint32_t n, int32_t m, struct QdCrossing *out);

// Library version as a static nul-terminated string.
const char *qd_version(void);

// Copy the calling thread's last error message into `buf` (truncated and
// always nul-terminated when `len > 0`). Returns the full message length
// excluding the terminator, or 0 when there is none.
//
// # Safety
// `buf` must be null or valid for `len` bytes of writes.
size_t qd_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDINFO_H */

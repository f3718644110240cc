#ifndef HFSURG_H
#define HFSURG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_UTF8 = 2,
  HF_STATUS_PARSE = 3,
  HF_STATUS_VALIDATION = 4,
  HF_STATUS_DOMAIN = 5,
  HF_STATUS_INSUFFICIENT_DATA = 6,
  HF_STATUS_INCONSISTENT_MODEL = 7,
  HF_STATUS_NOT_L_SPACE = 8,
  HF_STATUS_INTERNAL = 9,
  HF_STATUS_PANIC = 10,
} HfStatus;

/**
 * Surgery result handle: `HF⁺` in every Spin^c structure.
 */
typedef struct HfManifold HfManifold;

/**
 * Knot surgery model handle.
 */
typedef struct HfModel HfModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *hf_last_error_message(void);

/**
 * Parses and validates a knot model document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HfStatus hf_model_from_json(const char *json, struct HfModel **out);

/**
 * # Safety
 * `model` must come from [`hf_model_from_json`] and not be used afterwards.
 */
void hf_model_free(struct HfModel *model);

/**
 * Seifert genus of the model, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
uint32_t hf_model_genus(const struct HfModel *model);

/**
 * `HF⁺(S³_{p/q}(K))` for every Spin^c structure.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum HfStatus hf_surgery(const struct HfModel *model,
                         int64_t p,
                         int64_t q,
                         struct HfManifold **out);

/**
 * # Safety
 * `manifold` must come from [`hf_surgery`] and not be used afterwards.
 */
void hf_manifold_free(struct HfManifold *manifold);

/**
 * Number of Spin^c structures listed, or 0 for a null handle.
 *
 * # Safety
 * `manifold` must be null or a live handle.
 */
size_t hf_manifold_spinc_count(const struct HfManifold *manifold);

/**
 * # Safety
 * `manifold` must be null or a live handle.
 */
uint64_t hf_manifold_total_reduced_dim(const struct HfManifold *manifold);

/**
 * # Safety
 * `manifold` must be null or a live handle.
 */
bool hf_manifold_is_lspace(const struct HfManifold *manifold);

/**
 * d-invariant of the `slot`-th listed structure as `num/den`.
 * Fails with `Domain` for a structure without one (zero surgery, `k ≠ 0`).
 *
 * # Safety
 * `manifold` must be a live handle; `num` and `den` valid pointers.
 */
enum HfStatus hf_manifold_d_invariant(const struct HfManifold *manifold,
                                      size_t slot,
                                      int64_t *num,
                                      int64_t *den);

/**
 * Manifold document as JSON; free with [`hf_string_free`].
 *
 * # Safety
 * `manifold` must be a live handle and `out` a valid pointer.
 */
enum HfStatus hf_manifold_to_json(const struct HfManifold *manifold, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void hf_string_free(char *s);

/**
 * `d(L(p,q), i)` as `num/den`.
 *
 * # Safety
 * `num` and `den` must be valid pointers.
 */
enum HfStatus hf_lens_d(int64_t p, int64_t q, int64_t i, int64_t *num, int64_t *den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HFSURG_H */

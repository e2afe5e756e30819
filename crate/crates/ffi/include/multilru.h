#ifndef MULTILRU_H
#define MULTILRU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum MlruStatus {
  MLRU_STATUS_OK = 0,
  MLRU_STATUS_NULL_POINTER = 1,
  MLRU_STATUS_INVALID_PARAMETER = 2,
  MLRU_STATUS_INVALID_UTF8 = 3,
  MLRU_STATUS_CONFIG = 4,
  MLRU_STATUS_ROOT_FINDING = 5,
  MLRU_STATUS_IO = 6,
  MLRU_STATUS_INTERNAL = 7,
  MLRU_STATUS_PANIC = 8,
} MlruStatus;

/**
 * Which two-cache formula to evaluate.
 */
typedef enum MlruTwoCache {
  MLRU_TWO_CACHE_ONE = 0,
  MLRU_TWO_CACHE_ALL = 1,
} MlruTwoCache;

/**
 * Object popularity law.
 */
typedef struct MlruCatalogue MlruCatalogue;

/**
 * One LRU cache.
 */
typedef struct MlruInventory MlruInventory;

/**
 * Coverage-number distribution `p_0..p_M`.
 */
typedef struct MlruProfile MlruProfile;

/**
 * Aggregated result of a replicated experiment.
 */
typedef struct MlruReport MlruReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL, or
 * 0 if there is no error.
 */
size_t mlru_last_error(char *buf, size_t len);

/**
 * Frees a string returned by this library.
 */
void mlru_string_free(char *s);

/**
 * Zipf catalogue of `size` objects with exponent `exponent`.
 */
enum MlruStatus mlru_catalogue_zipf(size_t size, double exponent, struct MlruCatalogue **out);

/**
 * Catalogue from explicit popularities (normalised, non-increasing).
 */
enum MlruStatus mlru_catalogue_from_popularities(const double *popularities,
                                                 size_t len,
                                                 struct MlruCatalogue **out);

size_t mlru_catalogue_len(const struct MlruCatalogue *catalogue);

/**
 * Popularity mass of the `k` most popular objects.
 */
enum MlruStatus mlru_catalogue_head_mass(const struct MlruCatalogue *catalogue,
                                         size_t k,
                                         double *out);

void mlru_catalogue_free(struct MlruCatalogue *catalogue);

/**
 * Poisson coverage law of Boolean discs of radius `radius` on a PPP of
 * intensity `lambda_b`, tail folded into `p_{max_count}`.
 */
enum MlruStatus mlru_profile_ppp(double lambda_b,
                                 double radius,
                                 size_t max_count,
                                 struct MlruProfile **out);

/**
 * Profile from `p_0..p_{len-1}`.
 */
enum MlruStatus mlru_profile_from_pmf(const double *pmf, size_t len, struct MlruProfile **out);

enum MlruStatus mlru_profile_mean(const struct MlruProfile *profile, double *out);

/**
 * `p_m`, zero beyond the stored range.
 */
enum MlruStatus mlru_profile_probability(const struct MlruProfile *profile, size_t m, double *out);

void mlru_profile_free(struct MlruProfile *profile);

/**
 * Empty LRU cache holding at most `capacity` objects.
 */
enum MlruStatus mlru_inventory_new(size_t capacity, struct MlruInventory **out);

/**
 * LRU request: a hit moves `object` to the front, a miss inserts it and may
 * evict the least recent object. `evicted` receives that object, or -1.
 */
enum MlruStatus mlru_inventory_request(struct MlruInventory *inventory,
                                       uint32_t object,
                                       bool *hit,
                                       int64_t *evicted);

bool mlru_inventory_contains(const struct MlruInventory *inventory, uint32_t object);

size_t mlru_inventory_len(const struct MlruInventory *inventory);

/**
 * Copies up to `len` cached objects, most recent first, into `objects`.
 * Returns how many were written.
 */
size_t mlru_inventory_snapshot(const struct MlruInventory *inventory,
                               uint32_t *objects,
                               size_t len);

void mlru_inventory_free(struct MlruInventory *inventory);

/**
 * Che hit probability of one isolated LRU cache seeing request rate `rate`.
 */
enum MlruStatus mlru_che_single(const struct MlruCatalogue *catalogue,
                                double rate,
                                size_t k,
                                double *out);

/**
 * multi-LRU-One hit probability under the independence approximation.
 */
enum MlruStatus mlru_che_multi_one(const struct MlruCatalogue *catalogue,
                                   double lambda_u,
                                   double voronoi_area,
                                   const struct MlruProfile *profile,
                                   size_t k,
                                   double *out);

/**
 * multi-LRU-All hit probability under the similarity approximation.
 */
enum MlruStatus mlru_che_multi_all(const struct MlruCatalogue *catalogue,
                                   double lambda_u,
                                   double radius,
                                   const struct MlruProfile *profile,
                                   size_t k,
                                   double *out);

/**
 * Two caches sharing one area of `2 * voronoi_area`.
 */
enum MlruStatus mlru_two_cache(enum MlruTwoCache policy,
                               const struct MlruCatalogue *catalogue,
                               double lambda_u,
                               double voronoi_area,
                               size_t k,
                               double *out);

/**
 * Upper bound on the hit probability of any placement.
 */
enum MlruStatus mlru_hit_upper_bound(const struct MlruCatalogue *catalogue,
                                     const struct MlruProfile *profile,
                                     size_t k,
                                     double *out);

/**
 * Runs the experiment described by the TOML document `config` (the same
 * format as `multilru simulate --config`).
 */
enum MlruStatus mlru_experiment_run(const char *config, struct MlruReport **out);

/**
 * Number of policies in the report.
 */
size_t mlru_report_len(const struct MlruReport *report);

/**
 * Mean hit probability over replications and its 95% half-width (NaN with
 * a single replication) for policy `index`.
 */
enum MlruStatus mlru_report_hit(const struct MlruReport *report,
                                size_t index,
                                double *mean,
                                double *ci95);

/**
 * Policy name of entry `index`, e.g. `multi-lru-one`. Free with
 * [`mlru_string_free`]; null if `index` is out of range.
 */
char *mlru_report_policy(const struct MlruReport *report, size_t index);

/**
 * Whole report as JSON. Free with [`mlru_string_free`].
 */
enum MlruStatus mlru_report_json(const struct MlruReport *report, char **out);

void mlru_report_free(struct MlruReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTILRU_H */

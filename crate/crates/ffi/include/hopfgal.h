#ifndef HOPFGAL_H
#define HOPFGAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum HgsStatus {
  HGS_STATUS_OK = 0,
  HGS_STATUS_NULL_POINTER = 1,
  HGS_STATUS_INVALID_ARGUMENT = 2,
  HGS_STATUS_PARSE = 3,
  HGS_STATUS_RESOURCE_CAP = 4,
  HGS_STATUS_NOT_FOUND = 5,
  HGS_STATUS_BUFFER_TOO_SMALL = 6,
  HGS_STATUS_INTERNAL = 7,
} HgsStatus;

/**
 * A transitive group G with the stabilizer of point 1.
 */
typedef struct HgsContext HgsContext;

/**
 * A permutation group.
 */
typedef struct HgsGroup HgsGroup;

/**
 * Classified structures of one context.
 */
typedef struct HgsResult HgsResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf`.
 */
enum HgsStatus hgs_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hgs_version(void);

/**
 * Builds a group on `degree` points from `count` generators in cycle
 * notation, e.g. "(1,2,3)(4,5)".
 */
enum HgsStatus hgs_group_new(size_t degree,
                             const char *const *generators,
                             size_t count,
                             struct HgsGroup **out);

void hgs_group_free(struct HgsGroup *g);

enum HgsStatus hgs_group_order(const struct HgsGroup *g, uint64_t *out);

enum HgsStatus hgs_group_is_transitive(const struct HgsGroup *g, bool *out);

enum HgsStatus hgs_group_is_regular(const struct HgsGroup *g, bool *out);

/**
 * Context of a transitive group. The group handle stays owned by the caller.
 */
enum HgsStatus hgs_context_new(const struct HgsGroup *g, struct HgsContext **out);

void hgs_context_free(struct HgsContext *c);

/**
 * All structures of the given type label on the context, or of every type
 * when `type_label` is NULL, with flags and G-isomorphism classes filled in.
 */
enum HgsStatus hgs_find(const struct HgsContext *ctx,
                        const char *type_label,
                        struct HgsResult **out);

void hgs_result_free(struct HgsResult *r);

size_t hgs_result_len(const struct HgsResult *r);

/**
 * Flags of record `i`. Any output pointer may be NULL.
 */
enum HgsStatus hgs_result_flags(const struct HgsResult *r,
                                size_t i,
                                bool *almost_classical,
                                bool *bijective,
                                size_t *class_id);

enum HgsStatus hgs_result_type(const struct HgsResult *r,
                               size_t i,
                               char *buf,
                               size_t cap,
                               size_t *needed);

/**
 * Generators of N for record `i`, space separated, in cycle notation.
 */
enum HgsStatus hgs_result_generators(const struct HgsResult *r,
                                     size_t i,
                                     char *buf,
                                     size_t cap,
                                     size_t *needed);

/**
 * Summary row of a degree: degree followed by the nine table columns.
 * `catalog` may be NULL to use the default catalog resolution.
 */
enum HgsStatus hgs_table_row(size_t degree, const char *catalog, size_t jobs, uint64_t *row);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFGAL_H */

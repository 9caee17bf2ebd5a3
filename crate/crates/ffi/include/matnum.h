#ifndef MATNUM_H
#define MATNUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MnsStatus {
  MNS_STATUS_OK = 0,
  MNS_STATUS_INVALID_INPUT = 1,
  MNS_STATUS_DIMENSION = 2,
  MNS_STATUS_CERTIFICATE = 3,
  MNS_STATUS_INTERNAL = 4,
  MNS_STATUS_NULL_POINTER = 5,
  MNS_STATUS_OVERFLOW = 6,
} MnsStatus;

typedef enum MnsVerdict {
  MNS_VERDICT_FULL = 0,
  MNS_VERDICT_NOT_FULL = 1,
  MNS_VERDICT_UNKNOWN = 2,
} MnsVerdict;

/*
 A completeness certificate.
 */
typedef struct MnsCertificate MnsCertificate;

/*
 A base matrix with its digit list.
 */
typedef struct MnsSystem MnsSystem;

/*
 A digit word as indices into the digit list.
 */
typedef struct MnsWord MnsWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *mns_last_error_message(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be NULL or a pointer returned by this library and not yet freed.
 */
void mns_string_free(char *s);

/*
 Creates a system with an `n`×`n` base (row-major) and `k` digits of
 length `n` stored contiguously.

 # Safety
 `base` must point to `n*n` values, `digits` to `k*n` values, and `out`
 must be writable.
 */
enum MnsStatus mns_system_new(size_t n,
                              const int64_t *base,
                              size_t k,
                              const int64_t *digits,
                              struct MnsSystem **out);

/*
 Creates a system with base `J_n`.

 # Safety
 `digits` must point to `k*n` values and `out` must be writable.
 */
enum MnsStatus mns_system_new_jordan(size_t n,
                                     size_t k,
                                     const int64_t *digits,
                                     struct MnsSystem **out);

/*
 Creates `J_n` with digits `p = e_n`, `m = -e_n`, `z = 0` (indices 0, 1, 2).

 # Safety
 `out` must be writable.
 */
enum MnsStatus mns_system_new_pmz(size_t n, struct MnsSystem **out);

/*
 # Safety
 `sys` must be NULL or a handle from `mns_system_new*` not yet freed.
 */
void mns_system_free(struct MnsSystem *sys);

/*
 Dimension of the system, 0 for NULL.

 # Safety
 `sys` must be NULL or a live handle.
 */
size_t mns_system_dim(const struct MnsSystem *sys);

/*
 Number of digits, 0 for NULL.

 # Safety
 `sys` must be NULL or a live handle.
 */
size_t mns_system_digit_count(const struct MnsSystem *sys);

/*
 Evaluates a word and writes `dim` coordinates to `out`.

 # Safety
 `sys` must be a live handle, `word` must point to `len` values and `out`
 must have room for `dim` values.
 */
enum MnsStatus mns_evaluate(const struct MnsSystem *sys,
                            const uint32_t *word,
                            size_t len,
                            int64_t *out);

/*
 Classifies `{(a, b), (c, d)}` over `J_2`.

 # Safety
 `verdict` must be writable.
 */
enum MnsStatus mns_classify_j2(int64_t a,
                               int64_t b,
                               int64_t c,
                               int64_t d,
                               size_t k_max,
                               enum MnsVerdict *verdict);

/*
 Bounded completeness check. When the verdict is Full and `cert` is not
 NULL, a certificate handle is written to it; otherwise `*cert` is NULL.

 # Safety
 `sys` must be a live handle; `verdict` must be writable; `cert` must be
 NULL or writable.
 */
enum MnsStatus mns_check_full(const struct MnsSystem *sys,
                              size_t max_len,
                              uint64_t max_mod,
                              enum MnsVerdict *verdict,
                              struct MnsCertificate **cert);

/*
 Certificate for the `p, m, z` system of dimension `n`.

 # Safety
 `out` must be writable.
 */
enum MnsStatus mns_certificate_three_digit(size_t n, struct MnsCertificate **out);

/*
 Searches a certificate with words of length at most `max_len`. Writes
 NULL and returns `Ok` when none is found within the bound.

 # Safety
 `sys` must be a live handle and `out` writable.
 */
enum MnsStatus mns_certificate_search(const struct MnsSystem *sys,
                                      size_t max_len,
                                      struct MnsCertificate **out);

/*
 Re-checks a certificate against a system by evaluation.

 # Safety
 Both handles must be live.
 */
enum MnsStatus mns_certificate_verify(const struct MnsSystem *sys,
                                      const struct MnsCertificate *cert);

/*
 JSON text of a certificate; release with `mns_string_free`.

 # Safety
 `cert` must be NULL or a live handle.
 */
char *mns_certificate_to_json(const struct MnsCertificate *cert);

/*
 Parses a certificate from JSON text.

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum MnsStatus mns_certificate_from_json(const char *json, struct MnsCertificate **out);

/*
 # Safety
 `cert` must be NULL or a live handle.
 */
void mns_certificate_free(struct MnsCertificate *cert);

/*
 Finds a word evaluating to `target` (`dim` values).

 # Safety
 Handles must be live, `target` must point to `dim` values and `out` must
 be writable.
 */
enum MnsStatus mns_represent(const struct MnsSystem *sys,
                             const struct MnsCertificate *cert,
                             const int64_t *target,
                             struct MnsWord **out);

/*
 # Safety
 `word` must be NULL or a live handle.
 */
size_t mns_word_len(const struct MnsWord *word);

/*
 Letters of the word, valid until the handle is freed.

 # Safety
 `word` must be NULL or a live handle.
 */
const uint32_t *mns_word_data(const struct MnsWord *word);

/*
 # Safety
 `word` must be NULL or a live handle.
 */
void mns_word_free(struct MnsWord *word);

/*
 Runs the command-line front end on `argc` arguments (without the program
 name). Writes the JSON output to `*out` (release with `mns_string_free`)
 and returns the CLI exit code.

 # Safety
 `argv` must point to `argc` NUL-terminated strings and `out` must be
 writable.
 */
int32_t mns_cli_run(size_t argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATNUM_H */

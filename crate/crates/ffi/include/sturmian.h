#ifndef STURMIAN_H
#define STURMIAN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible function.
 */
typedef enum SturmianStatus {
  STURMIAN_STATUS_OK = 0,
  STURMIAN_STATUS_NULL_POINTER = 1,
  STURMIAN_STATUS_INVALID_UTF8 = 2,
  STURMIAN_STATUS_INVALID_LETTER = 3,
  STURMIAN_STATUS_EMPTY_WORD = 4,
  STURMIAN_STATUS_CONSTANT_WORD = 5,
  STURMIAN_STATUS_NOT_CENTRAL = 6,
  STURMIAN_STATUS_NOT_CHRISTOFFEL = 7,
  STURMIAN_STATUS_NOT_STANDARD = 8,
  STURMIAN_STATUS_NOT_IN_CODE = 9,
  STURMIAN_STATUS_AMBIGUOUS_CODE = 10,
  STURMIAN_STATUS_INVALID_SLOPE = 11,
  STURMIAN_STATUS_INVALID_COEFFICIENTS = 12,
  STURMIAN_STATUS_INVALID_STREAM = 13,
  STURMIAN_STATUS_LIMIT_EXCEEDED = 14,
  STURMIAN_STATUS_OUT_OF_RANGE = 15,
  STURMIAN_STATUS_BUFFER_TOO_SMALL = 16,
  STURMIAN_STATUS_PANIC = 17,
} SturmianStatus;

/**
 * Opaque infinite directive stream.
 */
typedef struct SturmianStream SturmianStream;

/**
 * Opaque finite word over `{a, b}`.
 */
typedef struct SturmianWord SturmianWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *sturmian_last_error(void);

/**
 * Parses a NUL-terminated string over `{a, b}`; `""` is the empty word.
 *
 * # Safety
 * `s` must be a valid C string and `out` a writable pointer.
 */
enum SturmianStatus sturmian_word_parse(const char *s, struct SturmianWord **out);

/**
 * # Safety
 * `w` must come from this library and not be freed twice. Null is ignored.
 */
void sturmian_word_free(struct SturmianWord *w);

/**
 * # Safety
 * `w` must be a live handle; `len` must be writable.
 */
enum SturmianStatus sturmian_word_len(const struct SturmianWord *w, size_t *len);

/**
 * Copies the word and a trailing NUL into `buf`. `needed` receives the
 * required capacity including the NUL, also when `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must hold `cap` bytes (it may be null when `cap` is 0).
 */
enum SturmianStatus sturmian_word_to_string(const struct SturmianWord *w,
                                            char *buf,
                                            size_t cap,
                                            size_t *needed);

/**
 * Iterated palindromic closure ψ(v).
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_psi(const struct SturmianWord *w, struct SturmianWord **out);

/**
 * Shortest palindrome having `w` as a prefix.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_palindromic_closure(const struct SturmianWord *w,
                                                 struct SturmianWord **out);

/**
 * The Christoffel word aψ(w)b.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_christoffel_from_directive(const struct SturmianWord *w,
                                                        struct SturmianWord **out);

/**
 * Derivative of a proper Christoffel word.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_christoffel_derivative(const struct SturmianWord *w,
                                                    struct SturmianWord **out);

/**
 * Derivative of a proper standard word.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_standard_derivative(const struct SturmianWord *w,
                                                 struct SturmianWord **out);

/**
 * Christoffel word with `p` letters b and `q` letters a.
 *
 * # Safety
 * `out` must be writable.
 */
enum SturmianStatus sturmian_christoffel_from_slope(uint64_t p,
                                                    uint64_t q,
                                                    struct SturmianWord **out);

/**
 * Whether `w` is a central word.
 *
 * # Safety
 * `w` must be a live handle; `result` must be writable.
 */
enum SturmianStatus sturmian_is_central(const struct SturmianWord *w, bool *result);

/**
 * Whether `w` is a Christoffel word, proper or not.
 *
 * # Safety
 * `w` must be a live handle; `result` must be writable.
 */
enum SturmianStatus sturmian_is_christoffel(const struct SturmianWord *w, bool *result);

/**
 * Whether `w` is a standard word, letters included.
 *
 * # Safety
 * `w` must be a live handle; `result` must be writable.
 */
enum SturmianStatus sturmian_is_standard(const struct SturmianWord *w, bool *result);

/**
 * Height h(v) of a directive word.
 *
 * # Safety
 * `v` must be a live handle; `result` must be writable.
 */
enum SturmianStatus sturmian_height(const struct SturmianWord *v, size_t *result);

/**
 * Parses a directive `"u|q"` meaning u·q^ω.
 *
 * # Safety
 * `s` must be a valid C string and `out` writable.
 */
enum SturmianStatus sturmian_stream_parse(const char *s, struct SturmianStream **out);

/**
 * The directive (ab)^ω of the Fibonacci word.
 */
struct SturmianStream *sturmian_stream_fibonacci(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void sturmian_stream_free(struct SturmianStream *s);

/**
 * First `n` letters of the characteristic word of `s`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_char_prefix(const struct SturmianStream *s,
                                         size_t n,
                                         struct SturmianWord **out);

/**
 * Directive of the derivative Ds as a new stream handle.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum SturmianStatus sturmian_stream_derivative(const struct SturmianStream *s,
                                               struct SturmianStream **out);

/**
 * Runs the exhaustive identity checks on directive words up to `max_len`.
 *
 * # Safety
 * `passed` and `total` must be writable.
 */
enum SturmianStatus sturmian_verify(size_t max_len, size_t *passed, size_t *total);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* STURMIAN_H */

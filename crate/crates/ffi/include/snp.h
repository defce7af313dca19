#ifndef SNP_FFI_H
#define SNP_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SnpStatus {
  SNP_STATUS_OK = 0,
  SNP_STATUS_NULL_POINTER = 1,
  SNP_STATUS_INVALID_UTF8 = 2,
  SNP_STATUS_PARSE = 3,
  SNP_STATUS_UNSUPPORTED = 4,
  SNP_STATUS_ARITHMETIC = 5,
  SNP_STATUS_PANIC = 6,
} SnpStatus;

/**
 * A simple extension `Q(alpha)` of the rationals.
 */
typedef struct SnpExtension SnpExtension;

/**
 * A form with rational coefficients.
 */
typedef struct SnpForm SnpForm;

/**
 * The outcome of a verification.
 */
typedef struct SnpReport SnpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *snp_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void snp_string_free(char *s);

/**
 * Parse an extension file with rational base field.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SnpStatus snp_extension_from_json(const char *json, struct SnpExtension **out);

/**
 * # Safety
 * `ext` must be null or a handle from this library, not yet freed.
 */
void snp_extension_free(struct SnpExtension *ext);

/**
 * Degree of the extension, or 0 for a null handle.
 *
 * # Safety
 * `ext` must be null or a live handle.
 */
size_t snp_extension_degree(const struct SnpExtension *ext);

/**
 * Norm of `sum coords[i] alpha^i`; missing trailing coordinates are zero.
 *
 * # Safety
 * `coords` must point to `len` NUL-terminated strings; `out` must be valid.
 */
enum SnpStatus snp_extension_norm(const struct SnpExtension *ext,
                                  const char *const *coords,
                                  size_t len,
                                  char **out);

/**
 * The norm form of the extension.
 *
 * # Safety
 * `ext` must be a live handle and `out` valid.
 */
enum SnpStatus snp_extension_norm_form(const struct SnpExtension *ext, struct SnpForm **out);

/**
 * Parse a form file over the rationals.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid.
 */
enum SnpStatus snp_form_from_json(const char *json, struct SnpForm **out);

/**
 * # Safety
 * `form` must be null or a live handle.
 */
void snp_form_free(struct SnpForm *form);

/**
 * # Safety
 * `form` must be null or a live handle.
 */
uint32_t snp_form_degree(const struct SnpForm *form);

/**
 * # Safety
 * `form` must be null or a live handle.
 */
size_t snp_form_dim(const struct SnpForm *form);

/**
 * The form's polynomial as text.
 *
 * # Safety
 * `form` must be a live handle and `out` valid.
 */
enum SnpStatus snp_form_to_string(const struct SnpForm *form, char **out);

/**
 * The form as a form file.
 *
 * # Safety
 * `form` must be a live handle and `out` valid.
 */
enum SnpStatus snp_form_to_json(const struct SnpForm *form, char **out);

/**
 * Value of the form at `coords`.
 *
 * # Safety
 * `coords` must point to `len` NUL-terminated strings; `out` must be valid.
 */
enum SnpStatus snp_form_value(const struct SnpForm *form,
                              const char *const *coords,
                              size_t len,
                              char **out);

/**
 * Check that `form` is multiplicative for the multiplication of `ext`.
 *
 * # Safety
 * Both handles must be live and `out` valid.
 */
enum SnpStatus snp_verify_composition(const struct SnpExtension *ext,
                                      const struct SnpForm *form,
                                      struct SnpReport **out);

/**
 * The norm descent identity for `x^d - c` (`trinomial` false) or
 * `x^d - b x - c` (`trinomial` true). `seed` is ignored when `exact`.
 *
 * # Safety
 * `out` must be valid.
 */
enum SnpStatus snp_verify_descent(size_t d,
                                  bool trinomial,
                                  bool exact,
                                  uint64_t seed,
                                  struct SnpReport **out);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
void snp_report_free(struct SnpReport *report);

/**
 * Whether the check held; false for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool snp_report_passed(const struct SnpReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum SnpStatus snp_report_to_json(const struct SnpReport *report, char **out);

/**
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
enum SnpStatus snp_report_to_text(const struct SnpReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SNP_FFI_H */

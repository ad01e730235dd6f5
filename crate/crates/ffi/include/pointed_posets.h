#ifndef POINTED_POSETS_H
#define POINTED_POSETS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum pp_status {
  PP_STATUS_OK = 0,
  PP_STATUS_NULL_POINTER = 1,
  PP_STATUS_INVALID_ARGUMENT = 2,
  PP_STATUS_LIMIT_EXCEEDED = 3,
  PP_STATUS_NOT_BOUNDED = 4,
  PP_STATUS_NO_CLOSED_FORM = 5,
  PP_STATUS_INTERNAL = 6,
} pp_status;

// Opaque handle to an enumerated family poset.
typedef struct pp_poset pp_poset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Enumerate a family and build its poset.
//
// `family` is a family tag such as `"A"`, `"MA_fixed"` or `"beta"`; `i` is
// the fixed parameter, or negative when the family takes none. Refuses
// families with more than `cap` elements.
//
// # Safety
// `family` must be a nul-terminated string and `out` a writable pointer.
enum pp_status pp_poset_new(const char *family,
                            uintptr_t n,
                            int64_t i,
                            uintptr_t cap,
                            struct pp_poset **out);

// # Safety
// `poset` must come from [`pp_poset_new`] and not be freed twice. Null is
// ignored.
void pp_poset_free(struct pp_poset *poset);

// Number of elements.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_len(const struct pp_poset *poset, uintptr_t *out);

// Largest rank of an element.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_rank(const struct pp_poset *poset, uintptr_t *out);

// Canonical text of element `index`.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_label(const struct pp_poset *poset, uintptr_t index, char **out);

// Möbius value from the bottom to the top, as a decimal string.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_mobius(const struct pp_poset *poset, char **out);

// Characteristic polynomial, e.g. `"x^2-6x+9"`.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_charpoly(const struct pp_poset *poset, char **out);

// Reduced homology of the proper part as JSON with keys `betti` and
// `torsion`, indexed from degree -1.
//
// # Safety
// `poset` must be a live handle and `out` writable.
enum pp_status pp_poset_homology_json(const struct pp_poset *poset, char **out);

// Predicted characteristic polynomial of a family, without enumerating it.
//
// # Safety
// `family` must be a nul-terminated string and `out` writable.
enum pp_status pp_closed_form(const char *family, uintptr_t n, int64_t i, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void pp_string_free(char *s);

// Message for the last failed call on this thread, or null after a
// success. The pointer stays valid until the next call on the same thread.
const char *pp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POINTED_POSETS_H */

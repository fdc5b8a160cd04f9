/* Exercises the shared library through its C header only. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gconv/gconv.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

static const char* Z9 =
    "{\"group\":{\"kind\":\"finite\",\"moduli\":[9]},"
    "\"endos\":{\"T\":[[\"2\"]]},"
    "\"sets\":{\"D\":{\"kind\":\"finite\",\"elements\":[0,1]}}}";

static gc_report* run(const gc_session* s, const char* const* args, size_t n) {
  gc_report* r = NULL;
  gc_status st = gc_run(s, args, n, &r);
  EXPECT(st == GC_OK);
  EXPECT(r != NULL);
  return r;
}

int main(void) {
  gc_session* s = NULL;
  EXPECT(gc_session_load_string(Z9, &s) == GC_OK);
  if (!s) return 1;

  {
    const char* args[] = {"mu", "T"};
    gc_report* r = run(s, args, 2);
    EXPECT(strcmp(gc_report_text(r), "1/4\n") == 0);
    EXPECT(gc_report_exit_code(r) == 0);
    EXPECT(strstr(gc_report_json(r), "\"1/4\"") != NULL);
    gc_report_free(r);
  }
  {
    const char* args[] = {"is-convex", "D", "pi:5"};
    gc_report* r = run(s, args, 3);
    EXPECT(gc_report_exit_code(r) == 1);
    EXPECT(strstr(gc_report_json(r), "\"Refuted\"") != NULL);
    gc_report_free(r);
  }
  {
    const char* args[] = {"hull", "D", "pi:5"};
    gc_report* r = run(s, args, 3);
    EXPECT(strcmp(gc_report_text(r), "{(0), (1), (2), (3), (4), (5), (6), (7), (8)}\n") == 0);
    gc_report_free(r);
  }
  {
    /* Referencing an undefined set is a parse error with no report. */
    const char* args[] = {"hull", "E"};
    gc_report* r = NULL;
    gc_status st = gc_run(s, args, 2, &r);
    EXPECT(st == GC_PARSE_ERROR);
    EXPECT(r == NULL);
    EXPECT(strstr(gc_last_error(), "undefined set 'E'") != NULL);
    EXPECT(strstr(gc_last_error_json(), "\"ParseError\"") != NULL);
    EXPECT(gc_exit_code_for_status(st) == 4);
  }

  /* parse(print(s)) prints the same text again. */
  {
    char* text = NULL;
    EXPECT(gc_session_to_json(s, &text) == GC_OK);
    gc_session* again = NULL;
    EXPECT(gc_session_load_string(text, &again) == GC_OK);
    char* text2 = NULL;
    EXPECT(gc_session_to_json(again, &text2) == GC_OK);
    EXPECT(text && text2 && strcmp(text, text2) == 0);
    gc_string_free(text);
    gc_string_free(text2);
    gc_session_free(again);
  }

  EXPECT(gc_session_set_param(s, "budget", "5") == GC_OK);
  EXPECT(gc_session_set_param(s, "budget", "zero") == GC_PARSE_ERROR);
  EXPECT(gc_session_set_param(s, "colour", "1") == GC_PARSE_ERROR);
  gc_session_free(s);

  /* Module errors surface as ValidationError with the cause attached. */
  {
    gc_session* bad = NULL;
    gc_status st = gc_session_load_string(
        "{\"group\":{\"kind\":\"finite\",\"moduli\":[4,2]},\"endos\":{\"T\":[[1,1],[0,1]]}}", &bad);
    EXPECT(st == GC_VALIDATION_ERROR);
    EXPECT(bad == NULL);
    EXPECT(gc_last_error_cause() == GC_NOT_A_HOMOMORPHISM);
    EXPECT(strstr(gc_last_error_json(), "NotAHomomorphism") != NULL);
  }
  {
    gc_session* bad = NULL;
    EXPECT(gc_session_load_string("{\"group\":", &bad) == GC_PARSE_ERROR);
    EXPECT(strstr(gc_last_error(), "line 1") != NULL);
    EXPECT(gc_session_load_file("/nonexistent/session.json", &bad) == GC_PARSE_ERROR);
  }

  EXPECT(gc_session_load_string(NULL, &s) == GC_INVALID_ARGUMENT);
  EXPECT(gc_run(NULL, NULL, 0, NULL) == GC_INVALID_ARGUMENT);
  gc_session_free(NULL);
  gc_report_free(NULL);

  EXPECT(gc_property_count() == 17);
  EXPECT(strcmp(gc_property_name(0), "LEMMA_MU") == 0);
  EXPECT(gc_property_name(17) == NULL);
  EXPECT(strcmp(gc_status_name(GC_GENERATOR_EXHAUSTED), "GeneratorExhausted") == 0);
  EXPECT(gc_exit_code_for_status(GC_GENERATOR_EXHAUSTED) == 3);
  EXPECT(gc_exit_code_for_status(GC_OK) == 0);

  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  puts("capi: ok");
  return 0;
}

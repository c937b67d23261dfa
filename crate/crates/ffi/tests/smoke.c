#include <stdio.h>
#include <string.h>

#include "groupoid_homology.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,     \
              gh_last_error() ? gh_last_error() : "no error");   \
      return 1;                                                  \
    }                                                            \
  } while (0)

static const char *SIGMA =
    "{\"graph\":{\"matrix\":[[2]]},\"pairs\":[{\"u\":\"e0\",\"v\":\"e1\"},{\"u\":\"e1\",\"v\":\"e0\"}]}";
static const char *TAU =
    "{\"graph\":{\"matrix\":[[2]]},\"pairs\":[{\"u\":\"e0 e0\",\"v\":\"e0\"},"
    "{\"u\":\"e0 e1\",\"v\":\"e1 e0\"},{\"u\":\"e1\",\"v\":\"e1 e1\"}]}";

int main(void) {
  GhSpec *spec = NULL;
  GhHomology *h = NULL;
  size_t rank = 0, torsion = 0;
  char *json = NULL;

  CHECK(gh_spec_parse_json("{\"type\":\"sft\",\"matrix\":[[2,1],[1,2]]}", &spec) == GH_STATUS_OK);
  CHECK(gh_homology_compute(spec, 0, 0, &h) == GH_STATUS_OK);
  CHECK(gh_homology_degree(h, 1, &rank, &torsion) == GH_STATUS_OK);
  CHECK(rank == 1 && torsion == 0);
  CHECK(gh_invariants_json(h, 4, "minimal,comparison,no-isolated-points", &json) == GH_STATUS_OK);
  CHECK(strstr(json, "\"strong_ah\":\"holds\"") != NULL);
  gh_string_free(json);
  gh_homology_free(h);
  gh_spec_free(spec);

  CHECK(gh_spec_parse_json("{\"type\":\"sft\"", &spec) == GH_STATUS_INVALID_INPUT);
  CHECK(gh_last_error() != NULL);

  GhTable *s = NULL, *t = NULL, *st = NULL;
  CHECK(gh_table_parse_json(SIGMA, 0, &s) == GH_STATUS_OK);
  CHECK(gh_table_parse_json(TAU, 0, &t) == GH_STATUS_OK);
  CHECK(gh_table_compose(s, t, &st) == GH_STATUS_OK);
  CHECK(gh_table_compact(st, &json) == GH_STATUS_OK);
  CHECK(strcmp(json, "{(00\xe2\x86\x92" "1),(01\xe2\x86\x92" "00),(1\xe2\x86\x92" "01)}") == 0);
  gh_string_free(json);

  uint64_t order = 0;
  CHECK(gh_table_order(s, 64, &order) == GH_STATUS_OK && order == 2);
  gh_table_free(st);
  gh_table_free(t);
  gh_table_free(s);
  printf("ok %s\n", gh_version());
  return 0;
}

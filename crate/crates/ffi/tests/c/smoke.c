#include <stdio.h>
#include <string.h>
#include "silting.h"

#define CHECK(call)                                                        \
  do {                                                                     \
    SiltStatus s_ = (call);                                                \
    if (s_ != SILT_STATUS_OK) {                                            \
      fprintf(stderr, "%s failed: %d %s\n", #call, s_, silt_last_error()); \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  SiltAlgebra *a = NULL;
  CHECK(silt_algebra_new(2, 1, &a));
  size_t cartan[4];
  CHECK(silt_algebra_cartan(a, cartan));
  printf("dim %zu cartan %zu %zu %zu %zu\n", silt_algebra_dim(a), cartan[0], cartan[1], cartan[2], cartan[3]);

  SiltComplex *lambda = NULL, *nu = NULL, *back = NULL;
  CHECK(silt_complex_regular(a, &lambda));
  SiltFlags f;
  CHECK(silt_complex_flags(lambda, &f));
  printf("flags %d %d %d\n", f.presilting, f.silting, f.tilting);

  CHECK(silt_nakayama(lambda, true, &nu));
  int64_t m = 0;
  CHECK(silt_reduce(nu, 4, &back, &m));
  size_t d = 0;
  CHECK(silt_hom_dim(back, lambda, 0, &d));
  printf("reduce m %lld hom %zu\n", (long long)m, d);

  SiltComplex *bad = NULL;
  SiltStatus s = silt_complex_from_json("{\"algebra\":", &bad);
  printf("malformed %d %s\n", s == SILT_STATUS_MALFORMED_JSON, bad == NULL ? "null" : "set");

  char *json = silt_complex_to_json(lambda);
  printf("json %s\n", strstr(json, "\"terms\"") ? "ok" : "missing");
  silt_string_free(json);

  silt_complex_free(back);
  silt_complex_free(nu);
  silt_complex_free(lambda);
  silt_algebra_free(a);
  return 0;
}

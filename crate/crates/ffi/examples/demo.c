/* cc -I crates/ffi/include crates/ffi/examples/demo.c target/debug/libjetgeom_ffi.a -lpthread -ldl -lm */
#include "jetgeom.h"
#include <stdio.h>
int main(void) {
  JgDims d;
  if (jg_dims(3, 1, 2, 2, &d) != JG_STATUS_OK) return 1;
  JgSubspace *h = NULL;
  if (jg_subspace_random_integral(3, 1, 2, 2, 7, &h) != JG_STATUS_OK) return 2;
  char *s = NULL;
  if (jg_polar_report_json(h, &s) != JG_STATUS_OK) return 3;
  printf("%s %zu %zu\n", jg_version(), d.isotropic, d.polar);
  jg_string_free(s); jg_subspace_free(h);
  if (jg_dims(3,1,2,9,&d) == JG_STATUS_INVALID_INPUT) printf("err: %s\n", jg_last_error_message());
  return 0;
}

/* Minimal consumer of the C interface. Build from the workspace root with
 *   cargo build -p rdcas-capi
 *   cc crates/capi/examples/smoke.c -Icrates/capi/include \
 *      -Ltarget/debug -lrdcas_capi -o smoke
 *   LD_LIBRARY_PATH=target/debug ./smoke
 */
#include "rdcas.h"

#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
  RdcasFps *exp2 = NULL;
  RdcasStatus st = rdcas_fps_parse_json(
      "{\"kind\":\"fps\",\"order\":2,\"coeffs\":{\"0\":\"1\",\"1\":\"1\",\"2\":\"1/2\"}}",
      &exp2);
  assert(st == RDCAS_STATUS_OK);

  RdcasFps *power = NULL;
  st = rdcas_fps_pow(exp2, "phi", &power);
  assert(st == RDCAS_STATUS_OK);

  char *coeff = NULL;
  st = rdcas_fps_coeff(power, 2, &coeff);
  assert(st == RDCAS_STATUS_OK);
  assert(strcmp(coeff, "1/2*phi^2") == 0);
  printf("[x^2] exp(x)^phi = %s\n", coeff);
  rdcas_string_free(coeff);

  RdcasFps *bad = NULL;
  st = rdcas_fps_parse_json("{\"kind\":\"fps\",\"order\":1,\"coeffs\":{}}", &bad);
  assert(st == RDCAS_STATUS_OK);
  RdcasFps *inverse = NULL;
  st = rdcas_fps_inv(bad, &inverse);
  assert(st == RDCAS_STATUS_NOT_INVERTIBLE);
  char *message = rdcas_last_error_message();
  printf("expected failure: %s\n", message);
  rdcas_string_free(message);

  rdcas_fps_free(exp2);
  rdcas_fps_free(power);
  rdcas_fps_free(bad);
  return 0;
}

#include <stdio.h>
#include <string.h>

#include "eisdepth.h"

int main(void) {
  EisdepthEngine *engine = NULL;
  if (eisdepth_engine_new(NULL, 1, 1, &engine) != EISDEPTH_STATUS_OK) {
    return 10;
  }
  EisdepthReport *report = NULL;
  if (eisdepth_compute(engine, 66, 5, 0, 1, &report) != EISDEPTH_STATUS_OK) {
    return 11;
  }
  printf("depth %llu val_phi %u val_index %lld nu %lld\n",
         (unsigned long long)eisdepth_report_depth(report),
         eisdepth_report_val_phi(report),
         (long long)eisdepth_report_val_index(report),
         (long long)eisdepth_report_minimal_generators(report));
  for (uint64_t i = 0; i < eisdepth_report_record_count(report); i++) {
    EisdepthRecord rec;
    eisdepth_report_record(report, i, &rec);
    printf("row %llu %u %u %llu\n", (unsigned long long)rec.level, rec.r, rec.e,
           (unsigned long long)rec.residue_field_size);
  }
  char *json = NULL;
  eisdepth_report_json(report, &json);
  int has_schema = strstr(json, "\"schema\":1") != NULL;
  eisdepth_string_free(json);
  eisdepth_report_free(report);

  EisdepthReport *bad = NULL;
  EisdepthStatus s = eisdepth_compute(engine, 12, 5, 0, 0, &bad);
  printf("status %d: %s\n", (int)s, eisdepth_last_error_message());
  eisdepth_engine_free(engine);
  return has_schema ? 0 : 12;
}

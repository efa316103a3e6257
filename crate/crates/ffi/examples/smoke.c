/* Build after `cargo build -p zfc-ffi --release`:
 *   cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *      target/release/libzfc_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>
#include "zfc.h"

int main(void) {
    const char *a = "x00000\nx0000x\n0x0000\n00x000\nx00x00\nx00000\n";
    ZfcInstance *inst = NULL;
    if (zfc_instance_from_matrix_text(a, &inst) != ZFC_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", zfc_last_error_message());
        return 1;
    }
    size_t x6 = 5;
    bool ok = true;
    zfc_verify(inst, &x6, 1, &ok);
    printf("verify {x6}: %s\n", ok ? "true" : "false");

    ZfcAnnealConfig cfg = zfc_anneal_config_default();
    ZfcRunReport *report = NULL;
    if (zfc_solve(inst, &cfg, &report) != ZFC_STATUS_OK) {
        fprintf(stderr, "solve: %s\n", zfc_last_error_message());
        return 1;
    }
    size_t ids[8];
    size_t len = 0;
    zfc_report_output_set(report, ids, 8, &len);
    printf("inputs:");
    for (size_t i = 0; i < len; i++) printf(" x%zu", ids[i] + 1);
    printf("\nfeasible: %s, iterations: %llu\n", zfc_report_feasible(report) ? "true" : "false",
           (unsigned long long)zfc_report_iterations(report));

    size_t opt = 0;
    if (zfc_exact_optimum(inst, 25, &opt) == ZFC_STATUS_OK) printf("exact optimum: %zu\n", opt);
    zfc_report_free(report);
    zfc_instance_free(inst);
    return 0;
}

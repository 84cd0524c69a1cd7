#include <stdio.h>
#include "ymbv.h"

int main(void) {
    YmHomotopy *h = NULL;
    YmBv *bv = NULL;
    size_t checked = 0, failing = 0, free_params = 0;
    size_t dims[4];
    const int64_t num[4] = {3, 1, 2, 2}, den[4] = {1, 1, 1, 1};

    printf("ymbv %s\n", ymbv_version());
    if (ymbv_homotopy_solve(0, &h) != YM_STATUS_OK) {
        fprintf(stderr, "%s\n", ymbv_last_error());
        return 1;
    }
    if (ymbv_bv_build(h, 3, &bv) != YM_STATUS_OK) return 1;
    if (ymbv_bv_verify(bv, &checked, &failing, &free_params) != YM_STATUS_OK) return 1;
    if (ymbv_homology_dims(num, den, dims) != YM_STATUS_OK) return 1;
    printf("%zu axioms, %zu failing, dims %zu %zu %zu %zu\n", checked, failing, dims[0], dims[1], dims[2], dims[3]);
    ymbv_bv_free(bv);
    ymbv_homotopy_free(h);
    return failing != 0 || free_params != 0;
}

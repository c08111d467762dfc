#include <stdio.h>
#include "genmat.h"

int main(void) {
    const char *json = "{\"ring\": {\"vars\": [\"x\", \"y\", \"z\", \"w\"],"
                       " \"relations\": [\"x*y - z*w\"]}}";
    GenmatAlgebra *alg = NULL;
    if (genmat_algebra_new(json, 0, &alg) != GENMAT_STATUS_OK) {
        fprintf(stderr, "%s\n", genmat_last_error());
        return 1;
    }
    size_t dim = 0;
    genmat_algebra_dimension(alg, &dim);
    const char *y[] = {"x + y", "z", "w"};
    bool nn = false;
    genmat_algebra_is_noether_normalization(alg, y, 3, &nn);
    printf("genmat %s: dim %zu, noether normalization %s\n", genmat_version(), dim, nn ? "yes" : "no");
    genmat_algebra_free(alg);
    return nn && dim == 3 ? 0 : 1;
}

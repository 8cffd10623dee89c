#include <stdio.h>
#include <string.h>

#include "downup.h"

int main(void) {
    DuAlgebra *a = NULL;
    if (du_algebra_new("h", "1", "2", "0", &a) != DU_STATUS_OK) {
        fprintf(stderr, "%s\n", du_last_error_message());
        return 1;
    }
    char *nf = NULL;
    if (du_normalize(a, "d*u", &nf) != DU_STATUS_OK) {
        return 2;
    }
    printf("%s\n", nf);
    du_string_free(nf);
    DuStatus st = du_normalize(a, "u**2", &nf);
    printf("%d %s\n", (int)st, du_last_error_message());
    du_algebra_free(a);
    return 0;
}

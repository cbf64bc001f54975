#include <stdio.h>
#include <string.h>
#include "lieaff.h"

int main(void) {
    LieaffAlgebra *g = NULL;
    if (lieaff_algebra_builtin("sl2", &g) != LIEAFF_STATUS_OK) return 1;
    size_t dim = 0;
    if (lieaff_algebra_dim(g, &dim) != LIEAFF_STATUS_OK || dim != 3) return 2;
    LieaffVerdict v;
    if (lieaff_decide(g, 4, 1, &v) != LIEAFF_STATUS_OK || v != LIEAFF_VERDICT_NO) return 3;
    lieaff_algebra_free(g);

    LieaffAlgebra *bad = NULL;
    if (lieaff_algebra_builtin("so5", &bad) != LIEAFF_STATUS_INVALID_ALGEBRA || bad != NULL) return 4;
    char *msg = lieaff_last_error();
    if (msg == NULL) return 5;
    printf("%s\n", msg);
    lieaff_string_free(msg);
    return 0;
}

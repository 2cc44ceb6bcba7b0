#include <stdio.h>
#include <string.h>

#include "hopfgal.h"

int main(void) {
    const char *gens[] = {"(1,2,3)", "(1,2)(4,5)"};
    HgsGroup *g = NULL;
    if (hgs_group_new(6, gens, 2, &g) != HGS_STATUS_OK) {
        fprintf(stderr, "group_new failed\n");
        return 1;
    }
    uint64_t order = 0;
    hgs_group_order(g, &order);
    HgsContext *ctx = NULL;
    HgsStatus st = hgs_context_new(g, &ctx);
    if (st != HGS_STATUS_NOT_FOUND && st != HGS_STATUS_INVALID_ARGUMENT) {
        fprintf(stderr, "intransitive group accepted\n");
        return 1;
    }
    hgs_group_free(g);

    const char *s3[] = {"(1,2)(3,6)(4,5)", "(1,3,5)(2,4,6)"};
    if (hgs_group_new(6, s3, 2, &g) != HGS_STATUS_OK || hgs_context_new(g, &ctx) != HGS_STATUS_OK) {
        fprintf(stderr, "regular S3 rejected\n");
        return 1;
    }
    HgsResult *res = NULL;
    if (hgs_find(ctx, NULL, &res) != HGS_STATUS_OK) {
        return 1;
    }
    size_t n = hgs_result_len(res);
    size_t ac = 0;
    for (size_t i = 0; i < n; i++) {
        bool a = false;
        hgs_result_flags(res, i, &a, NULL, NULL);
        ac += a;
    }
    char label[16];
    size_t need = 0;
    hgs_result_type(res, 0, label, sizeof label, &need);
    printf("order %llu structures %zu ac %zu first %s\n", (unsigned long long)order, n, ac, label);
    hgs_result_free(res);
    hgs_context_free(ctx);
    hgs_group_free(g);
    return (order == 6 && n == 5 && ac == 1) ? 0 : 1;
}

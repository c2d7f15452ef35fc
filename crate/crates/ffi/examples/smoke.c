#include <assert.h>
#include <stdio.h>
#include "redblue.h"

int main(void) {
    RbGraph *g = NULL;
    assert(rb_graph_partitioned(6, 3, RB_COLOUR_RED, &g) == RB_STATUS_OK);
    assert(rb_graph_n(g) == 6);

    RbPattern *p = NULL;
    assert(rb_pattern_named("rbrb_c4", &p) == RB_STATUS_OK);

    uint64_t count = 0;
    assert(rb_count_copies(p, g, &count) == RB_STATUS_OK);
    assert(count == 18);

    double value = 0.0;
    assert(rb_formula_eval("rbrb_max", 6, 0, 0, 0.0, 0.0, &value) == RB_STATUS_OK);
    assert(value == 18.0);

    uint64_t best = 0, extremal = 0;
    assert(rb_brute_force_max(p, 5, &best, &extremal) == RB_STATUS_OK);
    assert(best == 6 && extremal == 2);

    char *text = NULL;
    assert(rb_graph_to_text(g, &text) == RB_STATUS_OK);
    printf("graph text: %.6s..., count %llu, brute %llu\n", text,
           (unsigned long long)count, (unsigned long long)best);
    rb_string_free(text);
    rb_pattern_free(p);
    rb_graph_free(g);
    puts("ffi smoke ok");
    return 0;
}

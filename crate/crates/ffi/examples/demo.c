/* Prints the Randic minimum over P(8,8) and a witness graph. */
#include <stdio.h>
#include "chemhull.h"

int main(void) {
    ChPolytope *poly = NULL;
    if (ch_polytope_new(8, 8, &poly) != CH_STATUS_OK) {
        fprintf(stderr, "%s\n", ch_last_error_message());
        return 1;
    }
    printf("vertices %zu facets %zu\n", ch_polytope_vertex_count(poly), ch_polytope_facet_count(poly));
    ch_polytope_free(poly);

    ChOptimization *opt = NULL;
    if (ch_optimize_formula(8, 8, "1/sqrt(i*j)", CH_SENSE_MIN, &opt) != CH_STATUS_OK) {
        fprintf(stderr, "%s\n", ch_last_error_message());
        return 1;
    }
    double value = 0;
    int64_t p[5];
    ch_optimization_value(opt, &value);
    ch_optimization_arg_point(opt, 0, p);
    printf("min %.6f at (%lld,%lld,%lld,%lld,%lld)\n", value, (long long)p[0], (long long)p[1],
           (long long)p[2], (long long)p[3], (long long)p[4]);
    ch_optimization_free(opt);

    ChGraph *g = NULL;
    if (ch_realize(8, 8, p[0], p[1], p[4], 1, &g) != CH_STATUS_OK) {
        fprintf(stderr, "%s\n", ch_last_error_message());
        return 1;
    }
    char *dot = NULL;
    ch_graph_to_dot(g, &dot);
    fputs(dot, stdout);
    ch_string_free(dot);
    ch_graph_free(g);

    if (ch_optimize_formula(8, 8, "1/(i-j", CH_SENSE_MIN, &opt) != CH_STATUS_BAD_FORMULA) {
        return 1;
    }
    printf("syntax error at %lld\n", (long long)ch_last_error_position());
    return 0;
}

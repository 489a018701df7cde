#include <stdio.h>
#include <string.h>

#include "sturmian.h"

static int expect(const SturmianWord *w, const char *want) {
    char buf[64];
    size_t need = 0;
    if (sturmian_word_to_string(w, buf, sizeof buf, &need) != STURMIAN_STATUS_OK) return 1;
    if (strcmp(buf, want) != 0) {
        fprintf(stderr, "got %s, want %s\n", buf, want);
        return 1;
    }
    return 0;
}

int main(void) {
    SturmianWord *v = NULL, *psi = NULL, *c = NULL, *d = NULL;
    int failures = 0;

    if (sturmian_word_parse("abab", &v) != STURMIAN_STATUS_OK) return 1;
    if (sturmian_psi(v, &psi) != STURMIAN_STATUS_OK) return 1;
    failures += expect(psi, "abaababaaba");

    if (sturmian_christoffel_from_slope(3, 8, &c) != STURMIAN_STATUS_OK) return 1;
    failures += expect(c, "aaabaaabaab");
    if (sturmian_christoffel_derivative(c, &d) != STURMIAN_STATUS_OK) return 1;
    failures += expect(d, "aab");

    SturmianWord *bad = NULL;
    if (sturmian_word_parse("abc", &bad) != STURMIAN_STATUS_INVALID_LETTER) failures++;
    printf("error message: %s\n", sturmian_last_error());

    sturmian_word_free(v);
    sturmian_word_free(psi);
    sturmian_word_free(c);
    sturmian_word_free(d);
    printf("%s\n", failures == 0 ? "ok" : "FAILED");
    return failures != 0;
}

#include <stdio.h>
#include <string.h>

#include "semilocal.h"

int main(void) {
    SlVoa *v = NULL;
    if (sl_voa_build("u3", 0, NULL, &v) != SL_STATUS_OK) {
        fprintf(stderr, "build: %s\n", sl_last_error());
        return 1;
    }
    SlClassification c;
    if (sl_voa_classify(v, 24301, 64, &c) != SL_STATUS_OK) {
        return 2;
    }
    char *text = NULL;
    if (sl_voa_serialize(v, &text) != SL_STATUS_OK || strncmp(text, "name ", 5) != 0) {
        return 3;
    }
    SlVoa *bad = NULL;
    SlStatus s = sl_voa_parse("name X\nwindow zero\n", &bad);
    printf("blocks=%zu local=%d parse=%d error=%s\n", c.block_count, c.local, (int)s, sl_last_error());
    sl_string_free(text);
    sl_voa_free(v);
    return 0;
}

#include <stdio.h>
#include <string.h>

#include "indepforge.h"

int main(void) {
    const char *doc =
        "{\"schema\": \"indepforge/instance/1\", \"field\": \"GF(101)\","
        " \"rings\": {\"A\": {\"vars\": [\"x\"], \"truncation\": 8}},"
        " \"command\": {\"name\": \"strong-indep\", \"params\": {\"ideal\": [\"x^4\"]}}}";
    IfInstance *inst = NULL;
    if (indepforge_instance_parse(doc, &inst) != IF_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", indepforge_last_error());
        return 1;
    }
    char *report = NULL;
    IfStatus st = indepforge_run(inst, indepforge_caps_default(), &report);
    int ok = st == IF_STATUS_OK && strstr(report, "\"strongly_independent\": true") != NULL;
    printf("%s", report);
    indepforge_string_free(report);
    indepforge_instance_free(inst);
    return ok ? 0 : 1;
}

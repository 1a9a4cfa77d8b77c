#ifndef UNIVSIM_H
#define UNIVSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define UNIVSIM_API __declspec(dllexport)
#else
#define UNIVSIM_API __attribute__((visibility("default")))
#endif

/* Status codes returned by every call. */
typedef enum univsim_status {
    UNIVSIM_OK = 0,
    UNIVSIM_ERR_ARGUMENT = 1,  /* bad command, bad arguments, null pointers */
    UNIVSIM_ERR_PARSE = 2,     /* lexical, syntax or resolution diagnostics */
    UNIVSIM_ERR_BUDGET = 3,    /* a search exceeded max_candidates */
    UNIVSIM_ERR_IO = 4,
    UNIVSIM_ERR_INTERNAL = 5
} univsim_status;

typedef enum univsim_format { UNIVSIM_FORMAT_JSON = 0, UNIVSIM_FORMAT_TEXT = 1 } univsim_format;
typedef enum univsim_search { UNIVSIM_SEARCH_FUNCTIONAL = 0, UNIVSIM_SEARCH_ALL = 1 } univsim_search;

typedef struct univsim_document univsim_document;
typedef struct univsim_report univsim_report;

typedef struct univsim_options {
    uint64_t max_candidates;
    univsim_search search;
    uint64_t seed;
    uint32_t cantor_n; /* 0 = default */
} univsim_options;

/* Defaults; max_candidates comes from UNIVSIM_BUDGET when set. */
UNIVSIM_API void univsim_options_init(univsim_options* opts);

/* Parse and resolve a document.  On UNIVSIM_ERR_PARSE *out still receives a handle that
   carries the diagnostics; it must be freed. */
UNIVSIM_API univsim_status univsim_document_parse(const char* text, size_t len, univsim_document** out);
UNIVSIM_API univsim_status univsim_document_load(const char* path, univsim_document** out);
UNIVSIM_API void univsim_document_free(univsim_document* doc);

UNIVSIM_API size_t univsim_document_diagnostic_count(const univsim_document* doc);
/* Code (E-...), message and 1-based span; returns UNIVSIM_ERR_ARGUMENT when out of range. */
UNIVSIM_API univsim_status univsim_document_diagnostic(const univsim_document* doc, size_t i, const char** code,
                                                       const char** message, uint32_t* line, uint32_t* col);
/* Canonical text.  The string is owned by the caller; release with univsim_string_free. */
UNIVSIM_API univsim_status univsim_document_serialize(const univsim_document* doc, char** out);
/* Canonical JSON of the resolved objects. */
UNIVSIM_API univsim_status univsim_document_export(const univsim_document* doc, char** out);

/* Run a command.  doc may be NULL for `laws` and `cantor`.  A budget overrun still yields a
   report (verdict "budget-exceeded") together with UNIVSIM_ERR_BUDGET. */
UNIVSIM_API univsim_status univsim_run(const univsim_document* doc, const char* command, const char* const* argv,
                                       size_t argc, const univsim_options* opts, univsim_report** out);
UNIVSIM_API univsim_status univsim_report_render(const univsim_report* report, univsim_format format, char** out);
UNIVSIM_API const char* univsim_report_verdict(const univsim_report* report);
UNIVSIM_API int univsim_report_holds(const univsim_report* report);
UNIVSIM_API void univsim_report_free(univsim_report* report);

/* Message of the last failed call on this thread, or "". */
UNIVSIM_API const char* univsim_last_error(void);
UNIVSIM_API void univsim_string_free(char* s);
UNIVSIM_API const char* univsim_version(void);

#ifdef __cplusplus
}
#endif

#endif

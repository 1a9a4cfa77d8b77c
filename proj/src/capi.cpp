#include <univsim/univsim.h>

#include "driver.hpp"
#include "error.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

using univsim::Errc;

struct univsim_document {
    std::optional<univsim::dsl::Document> doc;
    std::optional<univsim::Model> model;
    std::vector<univsim::dsl::Diagnostic> diagnostics;
};

struct univsim_report {
    univsim::Report report;
};

namespace {

thread_local std::string last_error;

univsim_status status_of(Errc c) {
    switch (c) {
    case Errc::budget_exceeded: return UNIVSIM_ERR_BUDGET;
    case Errc::parse:
    case Errc::reference: return UNIVSIM_ERR_PARSE;
    case Errc::io: return UNIVSIM_ERR_IO;
    case Errc::internal: return UNIVSIM_ERR_INTERNAL;
    default: return UNIVSIM_ERR_ARGUMENT;
    }
}

univsim_status failed(univsim_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
univsim_status guard(F&& fn) {
    try {
        last_error.clear();
        return fn();
    } catch (const univsim::Error& e) {
        return failed(status_of(e.code()), std::string(univsim::errc_name(e.code())) + ": " + e.what());
    } catch (const std::bad_alloc&) {
        return failed(UNIVSIM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return failed(UNIVSIM_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.data(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

void univsim_options_init(univsim_options* opts) {
    if (!opts) return;
    opts->max_candidates = univsim::default_budget();
    opts->search = UNIVSIM_SEARCH_FUNCTIONAL;
    opts->seed = 0;
    opts->cantor_n = 0;
}

univsim_status univsim_document_parse(const char* text, size_t len, univsim_document** out) {
    if (!out) return failed(UNIVSIM_ERR_ARGUMENT, "null output handle");
    *out = nullptr;
    if (!text && len) return failed(UNIVSIM_ERR_ARGUMENT, "null text");
    return guard([&] {
        auto d = std::make_unique<univsim_document>();
        univsim::dsl::ParseResult p = univsim::dsl::parse(std::string_view(text ? text : "", len));
        d->diagnostics = p.diagnostics;
        if (p.ok()) {
            d->doc = p.doc;
            univsim::LoadResult r = univsim::resolve(p.doc);
            d->diagnostics = r.diagnostics;
            d->model = std::move(r.model);
        }
        univsim_status s = UNIVSIM_OK;
        if (!d->diagnostics.empty()) {
            s = failed(UNIVSIM_ERR_PARSE, univsim::dsl::format_diagnostic(d->diagnostics.front()));
        }
        *out = d.release();
        return s;
    });
}

univsim_status univsim_document_load(const char* path, univsim_document** out) {
    if (!out) return failed(UNIVSIM_ERR_ARGUMENT, "null output handle");
    *out = nullptr;
    if (!path) return failed(UNIVSIM_ERR_ARGUMENT, "null path");
    std::ifstream in(path, std::ios::binary);
    if (!in) return failed(UNIVSIM_ERR_IO, std::string("cannot open ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    return univsim_document_parse(text.data(), text.size(), out);
}

void univsim_document_free(univsim_document* doc) { delete doc; }

size_t univsim_document_diagnostic_count(const univsim_document* doc) { return doc ? doc->diagnostics.size() : 0; }

univsim_status univsim_document_diagnostic(const univsim_document* doc, size_t i, const char** code,
                                           const char** message, uint32_t* line, uint32_t* col) {
    if (!doc || i >= doc->diagnostics.size()) return failed(UNIVSIM_ERR_ARGUMENT, "no such diagnostic");
    const auto& d = doc->diagnostics[i];
    if (code) *code = d.code.c_str();
    if (message) *message = d.message.c_str();
    if (line) *line = d.span.line;
    if (col) *col = d.span.col;
    return UNIVSIM_OK;
}

univsim_status univsim_document_serialize(const univsim_document* doc, char** out) {
    if (!doc || !out) return failed(UNIVSIM_ERR_ARGUMENT, "null argument");
    if (!doc->doc) return failed(UNIVSIM_ERR_PARSE, "document did not parse");
    return guard([&] {
        *out = dup(univsim::dsl::serialize(*doc->doc));
        return UNIVSIM_OK;
    });
}

univsim_status univsim_document_export(const univsim_document* doc, char** out) {
    if (!doc || !out) return failed(UNIVSIM_ERR_ARGUMENT, "null argument");
    if (!doc->model) return failed(UNIVSIM_ERR_PARSE, "document did not resolve");
    return guard([&] {
        *out = dup(univsim::export_model(*doc->model).dump(2) + "\n");
        return UNIVSIM_OK;
    });
}

univsim_status univsim_run(const univsim_document* doc, const char* command, const char* const* argv, size_t argc,
                           const univsim_options* opts, univsim_report** out) {
    if (!out || !command) return failed(UNIVSIM_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    if (argc && !argv) return failed(UNIVSIM_ERR_ARGUMENT, "null argv");
    if (doc && !doc->model) return failed(UNIVSIM_ERR_PARSE, "document has diagnostics");
    return guard([&] {
        univsim_options o;
        univsim_options_init(&o);
        if (opts) o = *opts;
        univsim::RunOptions ro;
        ro.search.max_candidates = o.max_candidates;
        ro.search.space = o.search == UNIVSIM_SEARCH_ALL ? univsim::SearchSpace::all : univsim::SearchSpace::functional;
        ro.seed = o.seed;
        if (o.cantor_n) ro.n = o.cantor_n;
        std::vector<std::string> args;
        for (size_t i = 0; i < argc; ++i) {
            if (!argv[i]) univsim::fail(Errc::invalid_argument, "null argument string");
            args.emplace_back(argv[i]);
        }
        auto r = std::make_unique<univsim_report>();
        r->report = univsim::run_command(doc ? &*doc->model : nullptr, command, args, ro);
        bool over = r->report.budget_exceeded;
        *out = r.release();
        if (over) return failed(UNIVSIM_ERR_BUDGET, "budget exceeded");
        return UNIVSIM_OK;
    });
}

univsim_status univsim_report_render(const univsim_report* report, univsim_format format, char** out) {
    if (!report || !out) return failed(UNIVSIM_ERR_ARGUMENT, "null argument");
    return guard([&] {
        *out = dup(univsim::render(report->report,
                                   format == UNIVSIM_FORMAT_TEXT ? univsim::Format::text : univsim::Format::json));
        return UNIVSIM_OK;
    });
}

const char* univsim_report_verdict(const univsim_report* report) {
    return report ? report->report.verdict.c_str() : "";
}

int univsim_report_holds(const univsim_report* report) { return report && report->report.holds ? 1 : 0; }

void univsim_report_free(univsim_report* report) { delete report; }

const char* univsim_last_error(void) { return last_error.c_str(); }

void univsim_string_free(char* s) { std::free(s); }

const char* univsim_version(void) { return "0.1.0"; }

}  // extern "C"

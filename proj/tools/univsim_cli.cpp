#include <univsim/univsim.h>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 verdict computed, 1 usage, 2 parse/resolution, 3 budget, 4 I/O, 5 internal.
int exit_code(univsim_status s) {
    switch (s) {
    case UNIVSIM_OK: return 0;
    case UNIVSIM_ERR_ARGUMENT: return 1;
    case UNIVSIM_ERR_PARSE: return 2;
    case UNIVSIM_ERR_BUDGET: return 3;
    case UNIVSIM_ERR_IO: return 4;
    default: return 5;
    }
}

void print_diagnostics(const univsim_document* doc, const std::string& file) {
    for (size_t i = 0; i < univsim_document_diagnostic_count(doc); ++i) {
        const char *code = nullptr, *msg = nullptr;
        uint32_t line = 0, col = 0;
        univsim_document_diagnostic(doc, i, &code, &msg, &line, &col);
        std::cerr << file << ":" << line << ":" << col << ": " << code << ": " << msg << "\n";
    }
}

int emit(univsim_status s, char* text) {
    if (s != UNIVSIM_OK) {
        std::cerr << "univsim: " << univsim_last_error() << "\n";
        return exit_code(s);
    }
    std::fputs(text, stdout);
    univsim_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite universality checker for target-context instances", "univsim"};
    std::string command, instance, format = "json", search = "functional";
    std::vector<std::string> args;
    std::uint64_t max_candidates = 0, seed = 0;
    std::uint32_t n = 0;

    app.add_option("command", command,
                   "laws | universal | reduce | nogo | parsimony | lawvere | unreachability | cantor | "
                   "functor-check | verify | fmt | export")
        ->required();
    app.add_option("args", args, "command arguments (simulator, relation, functor names)");
    app.add_option("--instance", instance, "specification file (.tcc)");
    app.add_option("--max-candidates", max_candidates, "search budget (default: UNIVSIM_BUDGET or 1000000)");
    app.add_option("--search", search, "search space")->check(CLI::IsMember({"functional", "all"}));
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--n", n, "cardinality of C for cantor")->check(CLI::Range(1, 3));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    univsim_document* doc = nullptr;
    if (!instance.empty()) {
        univsim_status s = univsim_document_load(instance.c_str(), &doc);
        if (s != UNIVSIM_OK) {
            if (doc) print_diagnostics(doc, instance);
            else std::cerr << "univsim: " << univsim_last_error() << "\n";
            univsim_document_free(doc);
            return exit_code(s);
        }
    }

    int rc = 0;
    if (command == "fmt" || command == "export") {
        if (!doc) {
            std::cerr << "univsim: " << command << " needs --instance FILE\n";
            return 1;
        }
        char* text = nullptr;
        univsim_status s = command == "fmt" ? univsim_document_serialize(doc, &text) : univsim_document_export(doc, &text);
        rc = emit(s, text);
    } else {
        univsim_options opts;
        univsim_options_init(&opts);
        if (max_candidates) opts.max_candidates = max_candidates;
        opts.search = search == "all" ? UNIVSIM_SEARCH_ALL : UNIVSIM_SEARCH_FUNCTIONAL;
        opts.seed = seed;
        opts.cantor_n = n;
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        univsim_report* rep = nullptr;
        univsim_status s = univsim_run(doc, command.c_str(), cargs.data(), cargs.size(), &opts, &rep);
        std::string err = univsim_last_error();  // rendering resets it
        if (rep) {
            char* text = nullptr;
            univsim_status rs =
                univsim_report_render(rep, format == "text" ? UNIVSIM_FORMAT_TEXT : UNIVSIM_FORMAT_JSON, &text);
            if (rs == UNIVSIM_OK) {
                std::fputs(text, stdout);
                univsim_string_free(text);
            }
            univsim_report_free(rep);
        }
        if (s != UNIVSIM_OK) std::cerr << "univsim: " << err << "\n";
        rc = exit_code(s);
    }
    univsim_document_free(doc);
    return rc;
}

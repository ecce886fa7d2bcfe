// Command-line front end. Talks to the library only through fglkit.h.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fglkit/fglkit.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReportFailure = 1;
constexpr int kExitUsage = 2;

const char* const kVerbs =
    "fgl-coeffs, cp-classes, eta, hopf-coproduct, hopf-product, segre, gysin-diagonal, gysin-verify, "
    "steenrod-eval, verify-all";

struct Options
{
    std::string format = "json";
    int degree = 12;
    bool degree_given = false;
    unsigned l = 3;
    int gens = 2;
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    bool timings = false;

    std::string law = "universal";
    std::string basis = "beta";
    std::string bounds;
    int n = 0, m = 0;
    std::string expression;
};

// Failure inside the library, carried out of the verb handlers.
struct CallFailed
{
    fglkit_status status;
};

void check(fglkit_status s)
{
    if (s != FGLKIT_OK)
        throw CallFailed{s};
}

json take_json(char* raw)
{
    json j = json::parse(raw);
    fglkit_string_free(raw);
    return j;
}

struct Outcome
{
    json parameters = json::object();
    json results;
    bool failed_report = false;
    std::vector<std::pair<std::string, double>> report_seconds;
};

Outcome reports_outcome(fglkit_reports* r, json parameters)
{
    Outcome o;
    o.parameters = std::move(parameters);
    char* raw = nullptr;
    fglkit_status s = fglkit_reports_json(r, 0, &raw);
    if (s != FGLKIT_OK) {
        fglkit_reports_destroy(r);
        throw CallFailed{s};
    }
    bool passed = fglkit_reports_all_passed(r) != 0;
    for (size_t i = 0; i < fglkit_reports_count(r); ++i)
        o.report_seconds.emplace_back(fglkit_reports_name(r, i), fglkit_reports_seconds(r, i));
    fglkit_reports_destroy(r);
    o.results = {{"passed", passed}, {"reports", take_json(raw)}};
    o.failed_report = !passed;
    return o;
}

Outcome make_outcome(json parameters, json results)
{
    Outcome o;
    o.parameters = std::move(parameters);
    o.results = std::move(results);
    return o;
}

using Handler = std::function<Outcome(fglkit_context*, const Options&)>;

std::map<std::string, Handler> handlers()
{
    std::map<std::string, Handler> h;
    h["fgl-coeffs"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_fgl_coefficients(ctx, o.law.c_str(), o.degree, &raw));
        return make_outcome({{"law", o.law}, {"degree", o.degree}}, take_json(raw));
    };
    h["cp-classes"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_cp_classes(ctx, o.degree - 1, &raw));
        return make_outcome({{"degree", o.degree}}, take_json(raw));
    };
    h["eta"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_eta(ctx, o.degree - 1, &raw));
        return make_outcome({{"degree", o.degree}}, take_json(raw));
    };
    h["hopf-coproduct"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_hopf_coproduct(ctx, o.basis.c_str(), o.n, &raw));
        return make_outcome({{"basis", o.basis}, {"n", o.n}}, take_json(raw));
    };
    h["hopf-product"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_hopf_product(ctx, o.basis.c_str(), o.n, o.m, &raw));
        return make_outcome({{"basis", o.basis}, {"n", o.n}, {"m", o.m}}, take_json(raw));
    };
    h["segre"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_segre(ctx, o.n, o.m, &raw));
        return make_outcome({{"n", o.n}, {"m", o.m}}, take_json(raw));
    };
    h["gysin-diagonal"] = [](fglkit_context* ctx, const Options& o) {
        char* raw = nullptr;
        check(fglkit_gysin_diagonal(ctx, o.law.c_str(), o.n, &raw));
        Outcome out = make_outcome({{"law", o.law}, {"n", o.n}}, take_json(raw));
        out.failed_report = !out.results.value("agree", false);
        return out;
    };
    h["gysin-verify"] = [](fglkit_context* ctx, const Options& o) {
        fglkit_reports* r = nullptr;
        check(fglkit_gysin_verify(ctx, o.law.c_str(), o.n, &r));
        return reports_outcome(r, {{"law", o.law}, {"n", o.n}});
    };
    h["steenrod-eval"] = [](fglkit_context*, const Options& o) {
        char* raw = nullptr;
        check(fglkit_steenrod_eval(o.l, o.gens, o.bounds.empty() ? nullptr : o.bounds.c_str(), o.expression.c_str(), &raw));
        json params = {{"l", o.l}, {"gens", o.gens}};
        if (!o.bounds.empty())
            params["bounds"] = o.bounds;
        params["expression"] = o.expression;
        return make_outcome(params, take_json(raw));
    };
    h["verify-all"] = [](fglkit_context* ctx, const Options& o) {
        fglkit_reports* r = nullptr;
        int d = o.degree_given ? o.degree : 8;
        check(fglkit_verify_all(ctx, d, &r));
        return reports_outcome(r, {{"degree", d}});
    };
    return h;
}

std::string cell_text(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "-";
    return v.dump();
}

void print_table(std::ostream& os, const json& rows)
{
    std::vector<std::string> columns;
    for (const auto& [key, value] : rows.front().items())
        if (!value.is_array())
            columns.push_back(key);
    std::vector<std::size_t> width;
    for (const auto& c : columns) {
        std::size_t w = c.size();
        for (const auto& row : rows)
            w = std::max(w, cell_text(row[c]).size());
        width.push_back(w);
    }
    auto line = [&](const std::function<std::string(std::size_t)>& cell) {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::string text = cell(i);
            out += text;
            if (i + 1 < columns.size())
                out += std::string(width[i] - text.size() + 2, ' ');
        }
        os << out << '\n';
    };
    line([&](std::size_t i) { return columns[i]; });
    for (const auto& row : rows)
        line([&](std::size_t i) { return cell_text(row[columns[i]]); });
    // Array-valued fields (report failures) are listed under the table.
    for (const auto& row : rows)
        for (const auto& [key, value] : row.items())
            if (value.is_array())
                for (const auto& item : value)
                    os << "  " << cell_text(row[columns.front()]) << " " << key << ": " << cell_text(item) << '\n';
}

void print_text(std::ostream& os, const json& doc)
{
    os << "command: " << doc["command"].get<std::string>() << '\n';
    for (const auto& [key, value] : doc["parameters"].items())
        os << key << ": " << cell_text(value) << '\n';
    const json& results = doc["results"];
    if (results.is_array()) {
        if (results.empty())
            os << "(no terms)\n";
        else
            print_table(os, results);
    } else {
        std::size_t w = 0;
        for (const auto& [key, value] : results.items())
            if (!value.is_array())
                w = std::max(w, key.size());
        for (const auto& [key, value] : results.items())
            if (!value.is_array())
                os << key << std::string(w - key.size() + 2, ' ') << cell_text(value) << '\n';
        for (const auto& [key, value] : results.items())
            if (value.is_array() && !value.empty())
                print_table(os, value);
    }
    if (!doc["timings"].empty())
        for (const auto& [key, value] : doc["timings"].items())
            os << "time " << key << ": " << cell_text(value) << '\n';
}

int report_error(fglkit_status s)
{
    std::cerr << "error (" << fglkit_status_name(s) << "): " << fglkit_last_error() << '\n';
    if (std::string expected = fglkit_last_error_expected(); !expected.empty())
        std::cerr << "expected one of: " << expected << '\n';
    switch (s) {
    case FGLKIT_ERR_INVALID_ARGUMENT:
    case FGLKIT_ERR_PARSE:
    case FGLKIT_ERR_EXPRESSION:
    case FGLKIT_ERR_BOUND:
    case FGLKIT_ERR_DOMAIN:
    case FGLKIT_ERR_STRUCTURAL:
        return kExitUsage;
    default:
        return kExitReportFailure;
    }
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app("Formal group laws, complex cobordism of CP^infinity, Gysin maps and motivic Steenrod operations",
                 "fglkit");
    app.require_subcommand(1);
    app.footer(std::string("Verbs: ") + kVerbs);

    auto global = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--degree", o.degree, "Truncation degree D (verify-all: index bound, default 8)")
            ->check(CLI::Range(1, 40))
            ->each([&](const std::string&) { o.degree_given = true; });
        sub->add_option("--l", o.l, "Prime l for steenrod-eval")->check(CLI::Range(2u, 1000000u));
        sub->add_option("--gens", o.gens, "Generator count k for steenrod-eval")->check(CLI::Range(1, 16));
        sub->add_option("--cache-dir", o.cache_dir, "Cache directory (overrides FGLKIT_CACHE_DIR)");
        sub->add_flag("--no-cache", o.no_cache, "Do not read or write the table cache");
        sub->add_flag("--timings", o.timings, "Include wall-clock timings in the output");
    };
    auto add_law = [&](CLI::App* sub) {
        sub->add_option("--law", o.law, "universal | additive | multiplicative")
            ->check(CLI::IsMember({"universal", "additive", "multiplicative"}));
    };
    auto add_basis = [&](CLI::App* sub) {
        sub->add_option("--basis", o.basis, "beta | p")->check(CLI::IsMember({"beta", "p"}));
    };
    auto index = CLI::NonNegativeNumber;

    std::map<std::string, CLI::App*> subs;
    auto verb = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        global(sub);
        subs[name] = sub;
        return sub;
    };
    add_law(verb("fgl-coeffs", "Coefficients a_ij of F(x, y) with i + j <= D"));
    verb("cp-classes", "[CP^n] for n < D");
    verb("eta", "eta_n and eta'_n for n < D");
    {
        auto* s = verb("hopf-coproduct", "Coproduct of the n-th basis element");
        s->add_option("n", o.n)->required()->check(index);
        add_basis(s);
    }
    {
        auto* s = verb("hopf-product", "Product of the n-th and m-th basis elements");
        s->add_option("n", o.n)->required()->check(index);
        s->add_option("m", o.m)->required()->check(index);
        add_basis(s);
    }
    {
        auto* s = verb("segre", "Coefficients s^(r)_{n,m} of p_n * p_m");
        s->add_option("n", o.n)->required()->check(index);
        s->add_option("m", o.m)->required()->check(index);
    }
    {
        auto* s = verb("gysin-diagonal", "Diagonal class of P^n and the Euler class that should equal it");
        s->add_option("n", o.n)->required()->check(CLI::PositiveNumber);
        add_law(s);
    }
    {
        auto* s = verb("gysin-verify", "Gysin identities on P^n x P^n");
        s->add_option("n", o.n)->required()->check(CLI::PositiveNumber);
        add_law(s);
    }
    {
        auto* s = verb("steenrod-eval", "Evaluate an expression in beta, P<i>, q<i>, Q<i>, u<k>, v<k>");
        s->add_option("expression", o.expression)->required();
        s->add_option("--bounds", o.bounds, "Comma separated exponent bounds n_1,...,n_k");
    }
    verb("verify-all", "Run every identity check");

    if (argc > 1 && argv[1][0] != '-' && !subs.count(argv[1])) {
        std::cerr << "usage error: unknown verb '" << argv[1] << "'\n" << "verbs: " << kVerbs << '\n';
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n' << "verbs: " << kVerbs << '\n';
        return kExitUsage;
    }

    std::string name;
    for (const auto& [n, sub] : subs)
        if (sub->parsed())
            name = n;

    fglkit_context* ctx = nullptr;
    if (fglkit_status s = fglkit_context_create(o.cache_dir ? o.cache_dir->c_str() : nullptr, o.no_cache ? 0 : 1, &ctx);
        s != FGLKIT_OK)
        return report_error(s);

    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    int status = kExitOk;
    try {
        outcome = handlers().at(name)(ctx, o);
    } catch (const CallFailed& f) {
        status = report_error(f.status);
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char* warnings = nullptr;
    if (fglkit_context_take_warnings(ctx, &warnings) == FGLKIT_OK && warnings) {
        std::cerr << "warning: " << warnings;
        fglkit_string_free(warnings);
    }
    fglkit_context_destroy(ctx);
    if (status != kExitOk)
        return status;

    json timings = json::object();
    if (o.timings) {
        timings["total_seconds"] = total;
        for (const auto& [report, secs] : outcome.report_seconds)
            timings[report] = secs;
    }
    json doc;
    doc["command"] = name;
    doc["parameters"] = outcome.parameters;
    doc["results"] = outcome.results;
    doc["timings"] = timings;

    if (o.format == "text")
        print_text(std::cout, doc);
    else
        std::cout << doc.dump(2) << '\n';
    return outcome.failed_report ? kExitReportFailure : kExitOk;
}

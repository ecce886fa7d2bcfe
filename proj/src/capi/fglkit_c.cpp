#include "fglkit/fglkit.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <new>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fglkit/cache/table_cache.hpp"
#include "fglkit/gysin/gysin.hpp"
#include "fglkit/hopf/hopf_cp.hpp"
#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"
#include "fglkit/steenrod/expression.hpp"
#include "fglkit/verify/verify_all.hpp"

using json = nlohmann::ordered_json;
using namespace fglkit;
using Tables = std::shared_ptr<const lazard::LazardTables>;

struct fglkit_context
{
    std::optional<cache::TableCache> disk;
    std::mutex mutex;
    std::map<std::pair<std::string, int>, Tables> laws;
    std::vector<std::string> warnings;

    Tables tables(const std::string& law, int degree)
    {
        if (degree < 1)
            throw DomainError("truncation degree must be at least 1");
        std::lock_guard lock(mutex);
        auto key = std::pair{law, degree};
        if (auto it = laws.find(key); it != laws.end())
            return it->second;
        Tables t;
        if (law == "universal" && disk) {
            cache::ObtainOutcome outcome;
            t = disk->obtain(degree, &outcome);
            if (!outcome.warning.empty())
                warnings.push_back(outcome.warning);
        } else {
            lazard::FormalGroupLaw fgl = law == "universal"  ? lazard::FormalGroupLaw::universal(degree)
                                         : law == "additive" ? lazard::FormalGroupLaw::additive(degree)
                                                             : lazard::FormalGroupLaw::multiplicative(degree);
            t = std::make_shared<const lazard::LazardTables>(std::make_shared<const lazard::FormalGroupLaw>(std::move(fgl)));
        }
        laws.emplace(key, t);
        return t;
    }
};

struct fglkit_reports
{
    std::vector<verify::TimedReport> items;
};

namespace {

struct LastError
{
    std::string message;
    std::size_t offset = 0;
    std::string expected;
};

thread_local LastError last_error;

class InvalidArgument : public Error
{
public:
    using Error::Error;
};

fglkit_status set_error(fglkit_status status, std::string message, std::size_t offset = 0, std::string expected = {})
{
    last_error = {std::move(message), offset, std::move(expected)};
    return status;
}

template <class F>
fglkit_status guarded(F&& body)
{
    last_error = {};
    try {
        body();
        return FGLKIT_OK;
    } catch (const ParseError& e) {
        std::string expected;
        for (const auto& t : e.expected())
            expected += (expected.empty() ? "" : ",") + t;
        return set_error(FGLKIT_ERR_PARSE, e.what(), e.offset(), expected);
    } catch (const ExpressionError& e) {
        return set_error(FGLKIT_ERR_EXPRESSION, e.what(), e.offset());
    } catch (const InvalidArgument& e) {
        return set_error(FGLKIT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const BoundError& e) {
        return set_error(FGLKIT_ERR_BOUND, e.what());
    } catch (const DomainError& e) {
        return set_error(FGLKIT_ERR_DOMAIN, e.what());
    } catch (const StructuralError& e) {
        return set_error(FGLKIT_ERR_STRUCTURAL, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return set_error(FGLKIT_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(FGLKIT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(FGLKIT_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(FGLKIT_ERR_INTERNAL, "unknown exception");
    }
}

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw InvalidArgument(what);
}

std::string law_name(const char* law)
{
    require(law != nullptr, "law is NULL");
    std::string s(law);
    if (s != "universal" && s != "additive" && s != "multiplicative")
        throw InvalidArgument(fmt::format("unknown law '{}' (expected universal, additive or multiplicative)", s));
    return s;
}

hopf::Basis basis_of(const char* basis)
{
    require(basis != nullptr, "basis is NULL");
    std::string s(basis);
    if (s == "beta")
        return hopf::Basis::beta;
    if (s == "p")
        return hopf::Basis::p;
    throw InvalidArgument(fmt::format("unknown basis '{}' (expected beta or p)", s));
}

void emit(char** out, const json& j)
{
    *out = duplicate(j.dump());
}

// Random classes on P^n x P^n over the law's coefficient ring.
gysin::ModelClass random_model_class(const gysin::ModelPtr& model, std::mt19937& rng, int n)
{
    const auto& table = model->table_ptr();
    std::vector<std::size_t> coefficient_gens;
    for (std::size_t g = 0; g < table->size(); ++g)
        if (!(*table)[g].formal() && (*table)[g].weight <= 2)
            coefficient_gens.push_back(g);
    std::uniform_int_distribution<unsigned> e(0, static_cast<unsigned>(n));
    std::uniform_int_distribution<int> coef(-4, 4), count(1, 5);
    std::uniform_int_distribution<std::size_t> pick(0, coefficient_gens.size());
    std::vector<ring::Term> terms;
    for (int k = count(rng); k > 0; --k) {
        ring::Monomial m;
        m.set(table->index_of("x1"), e(rng));
        m.set(table->index_of("x2"), e(rng));
        if (std::size_t g = pick(rng); g < coefficient_gens.size())
            m.set(coefficient_gens[g], 1);
        terms.push_back({m, coef(rng)});
    }
    return gysin::ModelClass(model, ring::GradedPoly::from_terms(table, std::move(terms)));
}

std::optional<std::vector<int>> parse_bounds(const char* bounds, int gens)
{
    if (!bounds || !*bounds)
        return std::nullopt;
    std::vector<int> out;
    std::stringstream in(bounds);
    std::string item;
    while (std::getline(in, item, ',')) {
        char* end = nullptr;
        long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0' || v < 0 || v > 1'000'000)
            throw InvalidArgument(fmt::format("bad bound '{}' (expected non-negative integers)", item));
        out.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(out.size()) != gens)
        throw InvalidArgument(fmt::format("{} bounds given for {} generators", out.size(), gens));
    return out;
}

json report_json(const verify::TimedReport& t, bool with_timings)
{
    json j = {{"name", t.report.name},
              {"passed", t.report.passed},
              {"warning", t.report.warning},
              {"checked", t.report.checked},
              {"detail", t.report.detail},
              {"failures", t.report.failures}};
    if (with_timings)
        j["seconds"] = t.seconds;
    return j;
}

} // namespace

extern "C" {

const char* fglkit_version(void)
{
    return "1.0.0";
}

const char* fglkit_status_name(fglkit_status status)
{
    switch (status) {
    case FGLKIT_OK:
        return "ok";
    case FGLKIT_ERR_INVALID_ARGUMENT:
        return "invalid-argument";
    case FGLKIT_ERR_PARSE:
        return "parse-error";
    case FGLKIT_ERR_EXPRESSION:
        return "expression-error";
    case FGLKIT_ERR_BOUND:
        return "bound-error";
    case FGLKIT_ERR_DOMAIN:
        return "domain-error";
    case FGLKIT_ERR_STRUCTURAL:
        return "structural-error";
    case FGLKIT_ERR_IO:
        return "io-error";
    case FGLKIT_ERR_INTERNAL:
        return "internal-error";
    }
    return "unknown-status";
}

const char* fglkit_last_error(void)
{
    return last_error.message.c_str();
}

size_t fglkit_last_error_offset(void)
{
    return last_error.offset;
}

const char* fglkit_last_error_expected(void)
{
    return last_error.expected.c_str();
}

void fglkit_string_free(char* s)
{
    std::free(s);
}

fglkit_status fglkit_context_create(const char* cache_dir, int use_cache, fglkit_context** out)
{
    return guarded([&] {
        require(out != nullptr, "out is NULL");
        auto ctx = std::make_unique<fglkit_context>();
        if (use_cache) {
            std::optional<std::string> dir;
            if (cache_dir)
                dir = cache_dir;
            ctx->disk.emplace(cache::resolve_directory(dir));
        }
        *out = ctx.release();
    });
}

void fglkit_context_destroy(fglkit_context* ctx)
{
    delete ctx;
}

fglkit_status fglkit_context_take_warnings(fglkit_context* ctx, char** out)
{
    return guarded([&] {
        require(ctx && out, "NULL argument");
        std::lock_guard lock(ctx->mutex);
        *out = nullptr;
        if (ctx->warnings.empty())
            return;
        std::string text;
        for (const auto& w : ctx->warnings)
            text += w + "\n";
        ctx->warnings.clear();
        *out = duplicate(text);
    });
}

fglkit_status fglkit_fgl_coefficients(fglkit_context* ctx, const char* law, int degree, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        auto t = ctx->tables(law_name(law), degree);
        json rows = json::array();
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; i + j <= degree; ++j)
                if (const auto& c = t->fgl().coefficient(i, j); !c.is_zero())
                    rows.push_back({{"i", i}, {"j", j}, {"value", ring::to_string(c)}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_cp_classes(fglkit_context* ctx, int max_n, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(max_n >= 0, "index must be non-negative");
        auto t = ctx->tables("universal", max_n + 1);
        json rows = json::array();
        for (int n = 0; n <= max_n; ++n)
            rows.push_back({{"n", n}, {"value", ring::to_string(t->cp_class(n))}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_eta(fglkit_context* ctx, int max_n, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(max_n >= 0, "index must be non-negative");
        auto t = ctx->tables("universal", max_n + 1);
        json rows = json::array();
        for (int n = 0; n <= max_n; ++n)
            rows.push_back({{"n", n}, {"eta", ring::to_string(t->eta(n))}, {"eta_prime", ring::to_string(t->eta_prime(n))}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_hopf_coproduct(fglkit_context* ctx, const char* basis, int n, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(n >= 0, "index must be non-negative");
        auto b = basis_of(basis);
        hopf::HopfAlgebra h(ctx->tables("universal", n + 1));
        auto delta = h.coproduct(h.basis_element(b, n));
        json rows = json::array();
        for (const auto& [ij, c] : delta.terms)
            rows.push_back({{"left", ij.first}, {"right", ij.second}, {"coefficient", ring::to_string(c)}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_hopf_product(fglkit_context* ctx, const char* basis, int n, int m, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(n >= 0 && m >= 0, "index must be non-negative");
        auto b = basis_of(basis);
        hopf::HopfAlgebra h(ctx->tables("universal", n + m + 1));
        auto prod = h.product(h.basis_element(b, n), h.basis_element(b, m));
        json rows = json::array();
        for (const auto& [k, c] : prod.terms)
            rows.push_back({{"index", k}, {"coefficient", ring::to_string(c)}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_segre(fglkit_context* ctx, int n, int m, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(n >= 0 && m >= 0, "index must be non-negative");
        hopf::HopfAlgebra h(ctx->tables("universal", n + m + 1));
        json rows = json::array();
        for (const auto& term : h.segre_decomposition(n, m))
            rows.push_back({{"r", term.r}, {"coefficient", ring::to_string(term.coefficient)}});
        emit(out_json, rows);
    });
}

fglkit_status fglkit_gysin_diagonal(fglkit_context* ctx, const char* law, int n, char** out_json)
{
    return guarded([&] {
        require(ctx && out_json, "NULL argument");
        require(n >= 1, "n must be at least 1");
        std::string name = law_name(law);
        auto t = ctx->tables(name, n + 1);
        auto diagonal = gysin::diagonal_class(t, n);
        auto euler = gysin::euler_class_twisted_quotient(t, n);
        emit(out_json, {{"law", name},
                        {"n", n},
                        {"diagonal", ring::to_string(diagonal.value())},
                        {"euler", ring::to_string(euler.value())},
                        {"agree", diagonal == euler}});
    });
}

fglkit_status fglkit_gysin_verify(fglkit_context* ctx, const char* law, int n, fglkit_reports** out)
{
    return guarded([&] {
        require(ctx && out, "NULL argument");
        require(n >= 1, "n must be at least 1");
        std::string name = law_name(law);
        auto t = ctx->tables(name, n + 1);
        auto reports = std::make_unique<fglkit_reports>();
        auto timed = [&](auto&& check) {
            auto start = std::chrono::steady_clock::now();
            Report r = check();
            reports->items.push_back(
                {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
        };
        timed([&] { return gysin::verify_section_identity(t, n); });
        timed([&] { return gysin::verify_diagonal_vs_euler(t, n); });
        timed([&] {
            Report r(fmt::format("projection-properties[{},n={}]", name, n));
            auto model = gysin::OrientedRingModel::create(t, {{"x1", n}, {"x2", n}});
            std::mt19937 rng(7919);
            for (int k = 0; k < 25; ++k) {
                auto a = random_model_class(model, rng, n), b = random_model_class(model, rng, n);
                r.merge(gysin::verify_projection_properties(a, b, "x1"));
                r.merge(gysin::verify_projection_properties(a, b, "x2"));
            }
            return r;
        });
        *out = reports.release();
    });
}

fglkit_status fglkit_steenrod_eval(unsigned l, int gens, const char* bounds, const char* expression, char** out_json)
{
    return guarded([&] {
        require(expression && out_json, "NULL argument");
        require(gens >= 1, "generator count must be at least 1");
        auto ring = steenrod::MotRing::create(l, gens, parse_bounds(bounds, gens));
        auto tree = steenrod::parse_expression(expression);
        auto value = steenrod::evaluate(*tree, ring);
        json bidegree = nullptr;
        if (auto bd = value.bidegree())
            bidegree = {{"degree", bd->degree}, {"weight", bd->weight}};
        emit(out_json, {{"expression", steenrod::to_string(*tree)},
                        {"value", ring::to_string(value.value())},
                        {"bidegree", bidegree}});
    });
}

fglkit_status fglkit_verify_all(fglkit_context* ctx, int degree, fglkit_reports** out)
{
    return guarded([&] {
        require(ctx && out, "NULL argument");
        require(degree >= 1, "degree must be at least 1");
        auto reports = std::make_unique<fglkit_reports>();
        reports->items = verify::verify_all(degree, ctx->tables("universal", degree + 1));
        *out = reports.release();
    });
}

size_t fglkit_reports_count(const fglkit_reports* r)
{
    return r ? r->items.size() : 0;
}

int fglkit_reports_all_passed(const fglkit_reports* r)
{
    return r && verify::all_passed(r->items) ? 1 : 0;
}

const char* fglkit_reports_name(const fglkit_reports* r, size_t i)
{
    return r && i < r->items.size() ? r->items[i].report.name.c_str() : nullptr;
}

int fglkit_reports_passed(const fglkit_reports* r, size_t i)
{
    return r && i < r->items.size() && r->items[i].report.passed ? 1 : 0;
}

double fglkit_reports_seconds(const fglkit_reports* r, size_t i)
{
    return r && i < r->items.size() ? r->items[i].seconds : 0.0;
}

fglkit_status fglkit_reports_json(const fglkit_reports* r, int with_timings, char** out_json)
{
    return guarded([&] {
        require(r && out_json, "NULL argument");
        json rows = json::array();
        for (const auto& item : r->items)
            rows.push_back(report_json(item, with_timings != 0));
        emit(out_json, rows);
    });
}

void fglkit_reports_destroy(fglkit_reports* r)
{
    delete r;
}

fglkit_status fglkit_canonicalize(fglkit_context* ctx, int degree, const char* polynomial, char** out)
{
    return guarded([&] {
        require(ctx && polynomial && out, "NULL argument");
        auto t = ctx->tables("universal", degree);
        *out = duplicate(ring::to_string(ring::parse_poly(t->table_ptr(), polynomial)));
    });
}

} // extern "C"

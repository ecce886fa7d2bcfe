#include "fglkit/cache/table_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <unistd.h>
#include <zlib.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::cache {

namespace fs = std::filesystem;
using json = nlohmann::json;
using lazard::FormalGroupLaw;
using lazard::LazardTables;
using ring::GradedPoly;

namespace {

std::mutex& write_mutex()
{
    static std::mutex m;
    return m;
}

std::string checksum(const json& payload)
{
    std::string text = payload.dump();
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size()));
    return fmt::format("crc32:{:08x}", static_cast<unsigned long>(crc));
}

struct Rejected
{
    LoadStatus status;
    std::string why;
};

std::shared_ptr<const LazardTables> decode(const json& doc, int degree)
{
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("payload") || !doc.contains("checksum"))
        throw Rejected{LoadStatus::corrupt, "missing top-level fields"};
    if (doc["version"] != kFormatVersion)
        throw Rejected{LoadStatus::version_mismatch, fmt::format("format version {} (expected {})", doc["version"].dump(), kFormatVersion)};
    const json& payload = doc["payload"];
    if (doc["checksum"] != checksum(payload))
        throw Rejected{LoadStatus::corrupt, "checksum mismatch"};
    if (payload.at("law") != "universal")
        throw Rejected{LoadStatus::corrupt, "not a universal law table"};
    int stored = payload.at("degree").get<int>();
    if (stored < degree)
        throw Rejected{LoadStatus::too_small, fmt::format("holds D={}, need D={}", stored, degree)};

    auto table = lazard::universal_table(degree);
    std::map<std::pair<int, int>, GradedPoly> cells;
    for (const auto& c : payload.at("a")) {
        int i = c.at("i").get<int>(), j = c.at("j").get<int>();
        if (i + j <= degree)
            cells.emplace(std::pair{i, j}, ring::parse_poly(table, c.at("value").get<std::string>()));
    }
    auto read_list = [&](const char* key) {
        std::vector<GradedPoly> out;
        const auto& list = payload.at(key);
        for (int n = 0; n < degree && n < static_cast<int>(list.size()); ++n)
            out.push_back(ring::parse_poly(table, list[static_cast<std::size_t>(n)].get<std::string>()));
        return out;
    };
    auto cp = read_list("cp");
    auto eta_prime = read_list("eta_prime");

    auto fgl = std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal_from_coefficients(degree, cells));
    auto tables = std::make_shared<LazardTables>(fgl);
    tables->seed(std::move(cp), std::move(eta_prime));
    return tables;
}

} // namespace

fs::path resolve_directory(const std::optional<std::string>& explicit_dir)
{
    if (explicit_dir && !explicit_dir->empty())
        return *explicit_dir;
    if (const char* env = std::getenv("FGLKIT_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg)
        return fs::path(xdg) / "fglkit";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".local" / "share" / "fglkit";
    return fs::temp_directory_path() / "fglkit";
}

const char* to_string(LoadStatus s)
{
    switch (s) {
    case LoadStatus::missing:
        return "missing";
    case LoadStatus::loaded:
        return "loaded";
    case LoadStatus::too_small:
        return "too-small";
    case LoadStatus::corrupt:
        return "corrupt";
    case LoadStatus::version_mismatch:
        return "version-mismatch";
    }
    return "?";
}

TableCache::TableCache(fs::path directory) : dir_(std::move(directory)) {}

fs::path TableCache::file() const
{
    return dir_ / "universal-fgl.json";
}

std::shared_ptr<const LazardTables> TableCache::load(int degree, LoadStatus* status, std::string* message) const
{
    auto report = [&](LoadStatus s, std::string why) {
        if (status)
            *status = s;
        if (message)
            *message = std::move(why);
    };
    std::ifstream in(file(), std::ios::binary);
    if (!in) {
        report(LoadStatus::missing, "no cache file");
        return nullptr;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        auto tables = decode(json::parse(buffer.str()), degree);
        report(LoadStatus::loaded, {});
        return tables;
    } catch (const Rejected& r) {
        report(r.status, r.why);
    } catch (const json::exception& e) {
        report(LoadStatus::corrupt, e.what());
    } catch (const Error& e) {
        report(LoadStatus::corrupt, e.what());
    }
    return nullptr;
}

void TableCache::store(const LazardTables& tables) const
{
    if (tables.fgl().kind() != lazard::FglKind::universal)
        throw StructuralError("only the universal law is cached");
    const int D = tables.degree();
    json payload;
    payload["law"] = "universal";
    payload["degree"] = D;
    json cells = json::array();
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            cells.push_back({{"i", i}, {"j", j}, {"value", ring::to_string(tables.fgl().coefficient(i, j))}});
    payload["a"] = std::move(cells);
    json cp = json::array(), eta_prime = json::array();
    for (int n = 0; n < D; ++n) {
        cp.push_back(ring::to_string(tables.cp_class(n)));
        eta_prime.push_back(ring::to_string(tables.eta_prime(n)));
    }
    payload["cp"] = std::move(cp);
    payload["eta_prime"] = std::move(eta_prime);

    json doc;
    doc["version"] = kFormatVersion;
    doc["checksum"] = checksum(payload);
    doc["payload"] = std::move(payload);

    std::lock_guard lock(write_mutex());
    fs::create_directories(dir_);
    fs::path tmp = dir_ / fmt::format(".universal-fgl.json.{}.tmp", static_cast<long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << doc.dump(1) << '\n';
        out.flush();
        if (!out)
            throw Error(fmt::format("cannot write cache file {}", tmp.string()));
    }
    fs::rename(tmp, file());
}

std::shared_ptr<const LazardTables> TableCache::obtain(int degree, ObtainOutcome* outcome) const
{
    ObtainOutcome local;
    ObtainOutcome& o = outcome ? *outcome : local;
    std::string why;
    auto tables = load(degree, &o.load, &why);
    if (tables)
        return tables;
    if (o.load == LoadStatus::corrupt || o.load == LoadStatus::version_mismatch)
        o.warning = fmt::format("cache file {} rejected ({}); recomputing", file().string(), why);

    auto fresh = std::make_shared<const LazardTables>(
        std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal(degree)));
    try {
        store(*fresh);
        o.stored = true;
    } catch (const std::exception& e) {
        if (!o.warning.empty())
            o.warning += "; ";
        o.warning += fmt::format("could not store cache: {}", e.what());
    }
    return fresh;
}

} // namespace fglkit::cache

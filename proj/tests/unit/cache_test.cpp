#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fglkit/cache/table_cache.hpp"
#include "fglkit/ring/text.hpp"

namespace fs = std::filesystem;
using namespace fglkit;
using cache::LoadStatus;
using cache::TableCache;

namespace {

fs::path scratch(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("fglkit-cache-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

// Everything the cache stores, as canonical strings.
std::vector<std::string> snapshot(const lazard::LazardTables& t)
{
    std::vector<std::string> out;
    const int D = t.degree();
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            out.push_back(ring::to_string(t.fgl().coefficient(i, j)));
    for (int n = 0; n < D; ++n) {
        out.push_back(ring::to_string(t.cp_class(n)));
        out.push_back(ring::to_string(t.eta_prime(n)));
    }
    return out;
}

int stored_degree(const TableCache& c)
{
    std::ifstream in(c.file());
    return nlohmann::json::parse(in)["payload"]["degree"].get<int>();
}

} // namespace

TEST(Cache, RoundTripAtEight)
{
    TableCache c(scratch("rt"));
    lazard::LazardTables fresh(std::make_shared<const lazard::FormalGroupLaw>(lazard::FormalGroupLaw::universal(8)));
    c.store(fresh);
    LoadStatus status;
    auto loaded = c.load(8, &status);
    ASSERT_TRUE(loaded);
    EXPECT_EQ(status, LoadStatus::loaded);
    EXPECT_EQ(snapshot(*loaded), snapshot(fresh));
    ASSERT_TRUE(loaded->fgl().log_series());
    EXPECT_EQ(ring::to_string(loaded->fgl().log_series()->body()), ring::to_string(fresh.fgl().log_series()->body()));
    fs::remove_all(c.directory());
}

TEST(Cache, TruncatedFileIsRecomputedWithWarning)
{
    TableCache c(scratch("corrupt"));
    cache::ObtainOutcome first;
    auto t = c.obtain(6, &first);
    EXPECT_TRUE(first.stored);
    EXPECT_EQ(first.load, LoadStatus::missing);

    auto size = fs::file_size(c.file());
    fs::resize_file(c.file(), size / 2);
    cache::ObtainOutcome second;
    auto again = c.obtain(6, &second);
    EXPECT_EQ(second.load, LoadStatus::corrupt);
    EXPECT_FALSE(second.warning.empty());
    EXPECT_TRUE(second.stored);
    EXPECT_EQ(snapshot(*again), snapshot(*t));
    EXPECT_TRUE(c.load(6));
    fs::remove_all(c.directory());
}

TEST(Cache, TamperedValueFailsChecksum)
{
    TableCache c(scratch("tamper"));
    c.obtain(5);
    std::ifstream in(c.file());
    auto doc = nlohmann::json::parse(in);
    in.close();
    doc["payload"]["cp"][1] = "2*b1";
    std::ofstream(c.file()) << doc.dump();
    LoadStatus status;
    EXPECT_FALSE(c.load(5, &status));
    EXPECT_EQ(status, LoadStatus::corrupt);
    fs::remove_all(c.directory());
}

TEST(Cache, VersionMismatchRecomputes)
{
    TableCache c(scratch("version"));
    c.obtain(5);
    std::ifstream in(c.file());
    auto doc = nlohmann::json::parse(in);
    in.close();
    doc["version"] = cache::kFormatVersion + 1;
    std::ofstream(c.file()) << doc.dump();
    cache::ObtainOutcome o;
    c.obtain(5, &o);
    EXPECT_EQ(o.load, LoadStatus::version_mismatch);
    EXPECT_TRUE(o.stored);
    EXPECT_TRUE(c.load(5));
    fs::remove_all(c.directory());
}

TEST(Cache, SmallerStoredDegreeIsExtendedAndRestored)
{
    TableCache c(scratch("extend"));
    c.obtain(8);
    EXPECT_EQ(stored_degree(c), 8);
    cache::ObtainOutcome o;
    auto t = c.obtain(12, &o);
    EXPECT_EQ(o.load, LoadStatus::too_small);
    EXPECT_TRUE(o.stored);
    EXPECT_EQ(t->degree(), 12);
    EXPECT_EQ(stored_degree(c), 12);

    // A larger file serves smaller requests at exactly the requested degree.
    LoadStatus status;
    auto eight = c.load(8, &status);
    ASSERT_TRUE(eight);
    EXPECT_EQ(eight->degree(), 8);
    lazard::LazardTables fresh(std::make_shared<const lazard::FormalGroupLaw>(lazard::FormalGroupLaw::universal(8)));
    EXPECT_EQ(snapshot(*eight), snapshot(fresh));
    fs::remove_all(c.directory());
}

TEST(Cache, DirectoryResolution)
{
    ::setenv("FGLKIT_CACHE_DIR", "/tmp/from-env", 1);
    EXPECT_EQ(cache::resolve_directory(std::nullopt), fs::path("/tmp/from-env"));
    EXPECT_EQ(cache::resolve_directory(std::string("/tmp/from-flag")), fs::path("/tmp/from-flag"));
    ::unsetenv("FGLKIT_CACHE_DIR");
    ::setenv("XDG_DATA_HOME", "/tmp/xdg", 1);
    EXPECT_EQ(cache::resolve_directory(std::nullopt), fs::path("/tmp/xdg/fglkit"));
    ::unsetenv("XDG_DATA_HOME");
    ::setenv("HOME", "/home/someone", 1);
    EXPECT_EQ(cache::resolve_directory(std::nullopt), fs::path("/home/someone/.local/share/fglkit"));
}

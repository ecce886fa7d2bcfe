#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fglkit/lazard/lazard_tables.hpp"

namespace fglkit::cache {

inline constexpr int kFormatVersion = 1;

// FGLKIT_CACHE_DIR, else $XDG_DATA_HOME/fglkit, else ~/.local/share/fglkit.
// An explicit directory (a command-line flag) wins over all of them.
std::filesystem::path resolve_directory(const std::optional<std::string>& explicit_dir);

enum class LoadStatus { missing, loaded, too_small, corrupt, version_mismatch };

const char* to_string(LoadStatus s);

struct ObtainOutcome
{
    LoadStatus load = LoadStatus::missing;
    bool stored = false;
    std::string warning;  // non-empty when a file was rejected or could not be written
};

// Persistent store of the universal law's a_ij, [CP^n] and eta' tables as
// canonical polynomial strings in versioned, checksummed JSON. One file per
// directory holds the largest D computed so far.
class TableCache
{
public:
    explicit TableCache(std::filesystem::path directory);

    const std::filesystem::path& directory() const noexcept { return dir_; }
    std::filesystem::path file() const;

    // Tables at exactly `degree` if the file verifies and covers it.
    // Never returns a partially read table.
    std::shared_ptr<const lazard::LazardTables> load(int degree, LoadStatus* status = nullptr,
                                                     std::string* message = nullptr) const;

    // Writes to a temporary file in the same directory and renames it over
    // the target. Writers within the process are serialized.
    void store(const lazard::LazardTables& tables) const;

    // Loads, or computes and stores when the file is missing, rejected or
    // holds a smaller D.
    std::shared_ptr<const lazard::LazardTables> obtain(int degree, ObtainOutcome* outcome = nullptr) const;

private:
    std::filesystem::path dir_;
};

} // namespace fglkit::cache

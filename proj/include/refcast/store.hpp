#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace refcast {

// FNV-1a 64-bit of the file bytes, as "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(std::string_view bytes);

struct StoreEntry {
    std::string path;  // relative to the store directory
    std::size_t rows = 0;
    std::string checksum;
};

// A directory of dataset CSVs indexed by a store.meta JSON file
// (id -> path, row count, checksum). Lookup is read-only; register_file
// rewrites the index.
class DatasetStore {
public:
    explicit DatasetStore(std::filesystem::path dir);  // loads store.meta if present

    const std::filesystem::path& dir() const { return dir_; }
    const std::map<std::string, StoreEntry>& entries() const { return entries_; }

    // Absolute path of the dataset registered under id, if any.
    std::optional<std::filesystem::path> resolve(const std::string& id) const;

    // Whether the file on disk still matches the indexed checksum.
    bool checksum_ok(const std::string& id) const;

    // Adds or replaces an index entry for a file inside the store
    // directory and rewrites store.meta.
    void register_file(const std::string& id, const std::filesystem::path& file,
                       std::size_t rows);

private:
    std::filesystem::path dir_;
    std::map<std::string, StoreEntry> entries_;  // sorted: deterministic meta file
};

} // namespace refcast

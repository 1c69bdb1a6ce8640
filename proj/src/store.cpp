#include "refcast/store.hpp"

#include "refcast/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace refcast {

namespace {

using nlohmann::ordered_json;

constexpr const char* kMetaName = "store.meta";

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FormatError(p.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DatasetStore::DatasetStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    const auto meta_path = dir_ / kMetaName;
    if (!std::filesystem::exists(meta_path)) return;

    ordered_json meta;
    try {
        meta = ordered_json::parse(read_file(meta_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(meta_path.string() + ": " + e.what());
    }
    const ordered_json datasets = meta.value("datasets", ordered_json::object());
    for (const auto& [id, entry] : datasets.items()) {
        entries_[id] = StoreEntry{
            entry.value("path", std::string{}),
            entry.value("rows", std::size_t{0}),
            entry.value("checksum", std::string{}),
        };
    }
}

std::optional<std::filesystem::path> DatasetStore::resolve(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) return std::nullopt;
    return dir_ / it->second.path;
}

bool DatasetStore::checksum_ok(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) return false;
    const auto path = dir_ / it->second.path;
    if (!std::filesystem::exists(path)) return false;
    return fnv1a64_hex(read_file(path)) == it->second.checksum;
}

void DatasetStore::register_file(const std::string& id, const std::filesystem::path& file,
                                 std::size_t rows) {
    const auto rel = std::filesystem::relative(file, dir_);
    if (rel.empty() || rel.native().starts_with(".."))
        throw DomainError("register_file: '" + file.string() + "' lies outside the store");

    entries_[id] = StoreEntry{rel.generic_string(), rows, fnv1a64_hex(read_file(file))};

    ordered_json meta;
    auto& datasets = meta["datasets"] = ordered_json::object();
    for (const auto& [key, e] : entries_) {
        datasets[key] = {{"path", e.path}, {"rows", e.rows}, {"checksum", e.checksum}};
    }
    std::ofstream out(dir_ / kMetaName, std::ios::binary | std::ios::trunc);
    out << meta.dump(2) << "\n";
    if (!out) throw FormatError((dir_ / kMetaName).string() + ": cannot write index");
}

} // namespace refcast

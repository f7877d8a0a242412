#include "t2i/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "t2i/error.hpp"
#include "t2i/llm_client.hpp"

namespace t2i {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& p, std::string_view bytes) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, p);
}

DatasetRegistryEntry entry_from_json(const Json& j) {
  DatasetRegistryEntry e;
  e.dataset_id = j.at("dataset_id").get<std::string>();
  e.source_filename = j.at("source_filename").get<std::string>();
  e.stored_at = j.at("stored_at").get<std::string>();
  e.sequence = j.at("sequence").get<std::uint64_t>();
  e.profile = table_profile_from_json(j.at("profile"));
  return e;
}

}  // namespace

Json to_json(const DatasetRegistryEntry& e) {
  Json j;
  j["dataset_id"] = e.dataset_id;
  j["source_filename"] = e.source_filename;
  j["stored_at"] = e.stored_at;
  j["sequence"] = e.sequence;
  j["profile"] = to_json(e.profile);
  return j;
}

DatasetRegistry::DatasetRegistry(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_ / "blobs", ec);
  fs::create_directories(dir_ / "entries", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create data directory " + dir_.string());
  scan();
}

void DatasetRegistry::scan() {
  for (const auto& f : fs::directory_iterator(dir_ / "entries")) {
    if (f.path().extension() != ".json") continue;
    Json j = Json::parse(read_file(f.path()), nullptr, false);
    if (j.is_discarded()) continue;
    try {
      auto e = entry_from_json(j);
      next_sequence_ = std::max(next_sequence_, e.sequence + 1);
      entries_.emplace(e.dataset_id, std::move(e));
    } catch (const std::exception&) {
      // unreadable entry; skipped
    }
  }
}

DatasetRegistryEntry DatasetRegistry::register_dataset(std::string_view bytes,
                                                       const std::string& filename) {
  Dataset ds = ingest_csv(bytes, table_name_from_filename(filename));
  const std::string hash = hex64(fnv1a64(bytes));

  std::unique_lock lock(mu_);
  fs::path blob = dir_ / "blobs" / (hash + ".csv");
  if (!fs::exists(blob)) write_atomic(blob, bytes);

  DatasetRegistryEntry e;
  e.sequence = next_sequence_++;
  e.dataset_id = hash.substr(0, 12) + "-" + std::to_string(e.sequence);
  e.source_filename = filename;
  e.profile = ds.profile;
  e.stored_at = blob.string();
  write_atomic(dir_ / "entries" / (e.dataset_id + ".json"), to_json(e).dump(2));

  cache_.emplace(e.dataset_id, std::make_shared<const Dataset>(std::move(ds)));
  entries_.emplace(e.dataset_id, e);
  return e;
}

std::vector<DatasetRegistryEntry> DatasetRegistry::list() const {
  std::shared_lock lock(mu_);
  std::vector<DatasetRegistryEntry> out;
  for (const auto& [id, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.sequence < b.sequence; });
  return out;
}

std::optional<DatasetRegistryEntry> DatasetRegistry::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::shared_ptr<const Dataset> DatasetRegistry::dataset(const std::string& id) const {
  DatasetRegistryEntry entry;
  {
    std::shared_lock lock(mu_);
    auto it = entries_.find(id);
    if (it == entries_.end()) throw Error(ErrorCode::UnknownDataset, "unknown dataset " + id);
    if (auto c = cache_.find(id); c != cache_.end()) return c->second;
    entry = it->second;
  }
  auto ds = std::make_shared<const Dataset>(
      ingest_csv(read_file(entry.stored_at), entry.profile.table_name));
  if (!(ds->profile == entry.profile))
    throw Error(ErrorCode::IoError, "stored bytes no longer match the profile of " + id);
  std::unique_lock lock(mu_);
  return cache_.emplace(id, std::move(ds)).first->second;
}

}  // namespace t2i

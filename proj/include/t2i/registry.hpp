#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "t2i/dataprofile.hpp"

namespace t2i {

struct DatasetRegistryEntry {
  std::string dataset_id;
  std::string source_filename;
  TableProfile profile;
  std::string stored_at;  // path of the content-addressed blob
  std::uint64_t sequence = 0;
};

Json to_json(const DatasetRegistryEntry& entry);

/// Datasets persisted under a data directory:
///   blobs/<fnv64>.csv      uploaded bytes, content-addressed
///   entries/<id>.json      entry + cached profile
/// Every upload gets a fresh id, even for identical bytes. Reads take a shared
/// lock; registration is serialized.
class DatasetRegistry {
 public:
  explicit DatasetRegistry(std::filesystem::path dir);

  /// Ingests, persists and caches. Ingestion errors propagate unchanged.
  DatasetRegistryEntry register_dataset(std::string_view bytes, const std::string& filename);

  /// Registration order.
  std::vector<DatasetRegistryEntry> list() const;
  std::optional<DatasetRegistryEntry> find(const std::string& id) const;

  /// Throws Error(UnknownDataset). Loaded from the blob on first use; the
  /// recomputed profile must equal the cached one, else Error(IoError).
  std::shared_ptr<const Dataset> dataset(const std::string& id) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  void scan();

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, DatasetRegistryEntry> entries_;
  mutable std::map<std::string, std::shared_ptr<const Dataset>> cache_;
  std::uint64_t next_sequence_ = 1;
};

}  // namespace t2i

#pragma once

#include <memory>
#include <string>

#include "t2i/config.hpp"
#include "t2i/pipeline.hpp"
#include "t2i/registry.hpp"

namespace httplib {
class Server;
}

namespace t2i {

/// Transport from the service config: fixture replay, HTTP, or none.
std::shared_ptr<ChatTransport> make_transport(const ServiceConfig& config);

/// JSON API:
///   POST /datasets                  multipart field "file" or raw CSV body
///   GET  /datasets
///   GET  /datasets/{id}/profile
///   POST /datasets/{id}/query       {question, chart_hint?, offline?}
///   POST /eval/run                  JSONL pairs; ?threshold=0.5
///   GET  /healthz
/// plus static files under /ui when ui_dir is set.
class Service {
 public:
  explicit Service(const ServiceConfig& config);
  Service(std::shared_ptr<DatasetRegistry> registry, Pipeline pipeline, std::string ui_dir = {});

  void mount(httplib::Server& server) const;

  /// Blocks until the server stops. Returns false if the port cannot be bound.
  bool listen(const std::string& host, int port) const;

  DatasetRegistry& registry() const { return *registry_; }

  /// handle_query without HTTP; throws Error(UnknownDataset).
  PipelineResponse query(const std::string& dataset_id, const std::string& question,
                         const QueryOptions& options) const;

 private:
  std::shared_ptr<DatasetRegistry> registry_;
  Pipeline pipeline_;
  std::string ui_dir_;
};

}  // namespace t2i

#include "t2i/service.hpp"

#include <httplib.h>

#include "t2i/evalkit.hpp"

namespace t2i {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, ErrorCode code, const std::string& detail) {
  send_json(res, status,
            Json{{"error",
                  {{"code", std::string(wire_code(code))},
                   {"message", user_message(code)},
                   {"detail", detail}}}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownDataset: return 404;
    case ErrorCode::IoError:
    case ErrorCode::ConfigError: return 500;
    default: return 400;
  }
}

/// Uploaded bytes and filename from a multipart "file" field or a raw body.
std::pair<std::string, std::string> upload(const httplib::Request& req,
                                           const std::string& fallback_name) {
  if (req.is_multipart_form_data()) {
    if (!req.has_file("file"))
      throw Error(ErrorCode::BadRequest, "multipart upload needs a \"file\" field");
    const auto& f = req.get_file_value("file");
    return {f.content, f.filename.empty() ? fallback_name : f.filename};
  }
  std::string name = req.has_param("filename") ? req.get_param_value("filename") : fallback_name;
  return {req.body, name};
}

QueryOptions parse_query_body(const std::string& body, bool llm_available, std::string& question) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
  auto q = j.find("question");
  if (q == j.end() || !q->is_string() || q->get<std::string>().empty())
    throw Error(ErrorCode::BadRequest, "\"question\" must be a non-empty string");
  question = q->get<std::string>();
  QueryOptions opts;
  opts.offline = !llm_available;
  if (auto h = j.find("chart_hint"); h != j.end() && !h->is_null()) {
    if (!h->is_string()) throw Error(ErrorCode::BadRequest, "\"chart_hint\" must be a string");
    auto t = chart_type_from_string(h->get<std::string>());
    if (!t) throw Error(ErrorCode::BadRequest, "unknown chart type " + h->get<std::string>());
    opts.chart_hint = t;
  }
  if (auto o = j.find("offline"); o != j.end() && !o->is_null()) {
    if (!o->is_boolean()) throw Error(ErrorCode::BadRequest, "\"offline\" must be a boolean");
    opts.offline = o->get<bool>();
  }
  return opts;
}

}  // namespace

std::shared_ptr<ChatTransport> make_transport(const ServiceConfig& config) {
  if (!config.llm_fixtures.empty())
    return std::make_shared<FixtureChatTransport>(FixtureChatTransport::load(config.llm_fixtures));
  if (config.llm_enabled) return std::make_shared<HttpChatTransport>(config.llm);
  return nullptr;
}

Service::Service(const ServiceConfig& config)
    : Service(std::make_shared<DatasetRegistry>(config.data_dir),
              Pipeline(make_transport(config), config.llm), config.ui_dir) {}

Service::Service(std::shared_ptr<DatasetRegistry> registry, Pipeline pipeline, std::string ui_dir)
    : registry_(std::move(registry)), pipeline_(std::move(pipeline)), ui_dir_(std::move(ui_dir)) {}

PipelineResponse Service::query(const std::string& dataset_id, const std::string& question,
                                const QueryOptions& options) const {
  auto ds = registry_->dataset(dataset_id);
  return pipeline_.run(*ds, question, options);
}

void Service::mount(httplib::Server& server) const {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  server.Post("/datasets", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      auto [bytes, name] = upload(req, "dataset.csv");
      send_json(res, 201, to_json(registry_->register_dataset(bytes, name)));
    } catch (const Error& e) {
      send_error(res, status_for(e.code()), e.code(), e.what());
    }
  });

  server.Get("/datasets", [this](const httplib::Request&, httplib::Response& res) {
    Json list = Json::array();
    for (const auto& e : registry_->list()) {
      list.push_back({{"dataset_id", e.dataset_id},
                      {"source_filename", e.source_filename},
                      {"table_name", e.profile.table_name},
                      {"row_count", e.profile.row_count},
                      {"column_count", e.profile.column_count}});
    }
    send_json(res, 200, Json{{"datasets", list}});
  });

  server.Get(R"(/datasets/([^/]+)/profile)",
             [this](const httplib::Request& req, httplib::Response& res) {
               auto e = registry_->find(req.matches[1]);
               if (!e) {
                 send_error(res, 404, ErrorCode::UnknownDataset,
                            "unknown dataset " + std::string(req.matches[1]));
                 return;
               }
               send_json(res, 200, to_json(e->profile));
             });

  server.Post(R"(/datasets/([^/]+)/query)",
              [this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                std::string question;
                QueryOptions opts;
                try {
                  opts = parse_query_body(req.body, pipeline_.llm_available(), question);
                  auto resp = query(id, question, opts);
                  send_json(res, resp.ok() ? 200 : 422, to_json(resp));
                } catch (const Error& e) {
                  send_error(res, status_for(e.code()), e.code(), e.what());
                }
              });

  server.Post("/eval/run", [](const httplib::Request& req, httplib::Response& res) {
    try {
      auto [bytes, name] = upload(req, "pairs.jsonl");
      double threshold = 0.5;
      if (req.has_param("threshold")) {
        auto t = parse_real(req.get_param_value("threshold"));
        if (!t || *t < 0 || *t > 1)
          throw Error(ErrorCode::BadRequest, "threshold must be a number in [0, 1]");
        threshold = *t;
      }
      send_json(res, 200, to_json(run_eval_suite(read_pairs_jsonl(bytes), threshold)));
    } catch (const Error& e) {
      send_error(res, status_for(e.code()), e.code(), e.what());
    }
  });

  if (!ui_dir_.empty()) server.set_mount_point("/ui", ui_dir_);
}

bool Service::listen(const std::string& host, int port) const {
  httplib::Server server;
  mount(server);
  return server.listen(host, port);
}

}  // namespace t2i

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "t2i/chart.hpp"
#include "t2i/dataprofile.hpp"
#include "t2i/engine.hpp"
#include "t2i/insights.hpp"
#include "t2i/llm_client.hpp"
#include "t2i/refine.hpp"
#include "t2i/translate.hpp"

namespace t2i {

struct PipelineError {
  std::string code;     // wire code, e.g. "OFF_TOPIC"
  std::string message;  // user-facing, asks for a rephrased question
  std::string detail;   // technical cause
};

/// Exactly one of (chart, table, insights) or error is populated.
struct PipelineResponse {
  std::string question;
  std::string generated_sql;
  std::optional<std::string> refined_sql;
  std::optional<RefinementReport> refinement;
  std::optional<ChartSpec> chart;
  std::optional<InsightReport> insights;
  std::optional<ResultTable> table;
  std::optional<PipelineError> error;

  bool ok() const { return !error.has_value(); }
};

struct QueryOptions {
  std::optional<ChartType> chart_hint;  // overrides detection from the question
  bool offline = true;
};

/// User-facing text for a pipeline error code.
std::string user_message(ErrorCode code);

/// translate -> parse -> refine -> relevance gate -> execute -> chart ->
/// insights. Without a transport only the offline path is available.
class Pipeline {
 public:
  Pipeline() = default;
  Pipeline(std::shared_ptr<ChatTransport> llm, LlmConfig config)
      : llm_(std::move(llm)), config_(std::move(config)) {}

  bool llm_available() const { return llm_ != nullptr; }

  PipelineResponse run(const Dataset& dataset, const std::string& question,
                       const QueryOptions& options) const;

 private:
  std::shared_ptr<ChatTransport> llm_;
  LlmConfig config_;
};

Json to_json(const PipelineResponse& response);

}  // namespace t2i

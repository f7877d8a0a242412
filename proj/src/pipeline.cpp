#include "t2i/pipeline.hpp"

#include "t2i/sql.hpp"

namespace t2i {

std::string user_message(ErrorCode code) {
  switch (code) {
    case ErrorCode::OffTopic:
    case ErrorCode::UnresolvedIdentifiers: return std::string(kOffTopicMessage);
    case ErrorCode::ParseError:
    case ErrorCode::LlmTimeout:
    case ErrorCode::LlmHttpError:
    case ErrorCode::LlmMalformedOutput:
      return "The question could not be turned into a valid query. Please refine your question.";
    case ErrorCode::UnknownColumn:
    case ErrorCode::TypeMismatch:
    case ErrorCode::InvalidGrouping:
      return "The generated query could not be run on this dataset. Please refine your question.";
    case ErrorCode::EmptyDataset:
      return "The query returned no rows, so there is nothing to chart. Please refine your "
             "question.";
    case ErrorCode::NoSuitableChart:
    case ErrorCode::InapplicableChart:
      return "No suitable chart type could be generated from the query result. Please refine "
             "your question.";
    default: break;
  }
  return "The request could not be completed. Please refine your question.";
}

PipelineResponse Pipeline::run(const Dataset& dataset, const std::string& question,
                               const QueryOptions& options) const {
  PipelineResponse resp;
  resp.question = question;
  auto fail = [&](ErrorCode code, std::string detail) {
    resp.error = PipelineError{std::string(wire_code(code)), user_message(code), std::move(detail)};
    return resp;
  };

  TranslationResult tr;
  try {
    if (options.offline) {
      tr = offline_to_sql(question, dataset.profile);
    } else if (llm_) {
      tr = llm_to_sql(question, dataset.profile, *llm_, config_);
    } else {
      return fail(ErrorCode::LlmHttpError, "no LLM endpoint is configured; use offline mode");
    }
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  }
  resp.generated_sql = tr.sql;
  if (tr.off_topic) {
    auto gate = relevance_gate({}, tr);
    return fail(*gate.code, std::string(kWrongQuestion));
  }

  sql::SqlAst ast;
  try {
    ast = sql::parse(tr.sql);
  } catch (const Error& e) {
    return fail(ErrorCode::ParseError, e.what());
  }

  RefinedQuery refined;
  try {
    refined = refine_query(ast, dataset.profile);
  } catch (const UnresolvedIdentifiers& u) {
    resp.refinement = u.report();
    return fail(ErrorCode::UnresolvedIdentifiers, u.what());
  }
  resp.refinement = refined.report;
  resp.refined_sql = sql::print_canonical(refined.ast);
  if (auto gate = relevance_gate(refined.report, tr); !gate.pass)
    return fail(*gate.code, std::string(kWrongQuestion));

  ResultTable table;
  ChartSpec chart;
  try {
    table = execute(refined.ast, dataset);
    std::optional<ChartType> requested = options.chart_hint;
    if (!requested) requested = detect_requested_chart(question);
    ChartType type = predict_chart(classify_shape(table), requested);
    chart = build_chart_spec(table, type, question);
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  }

  InsightReport insights = template_insights(table);
  if (!options.offline && llm_) {
    try {
      insights = llm_insights(table, *llm_, config_);
    } catch (const Error&) {
      // template report stands
    }
  }

  resp.table = std::move(table);
  resp.chart = std::move(chart);
  resp.insights = std::move(insights);
  return resp;
}

Json to_json(const PipelineResponse& r) {
  Json j;
  j["question"] = r.question;
  j["generated_sql"] = r.generated_sql;
  j["refined_sql"] = r.refined_sql ? Json(*r.refined_sql) : Json(nullptr);
  j["refinement"] = r.refinement ? to_json(*r.refinement) : Json(nullptr);
  j["chart"] = r.chart ? to_json(*r.chart) : Json(nullptr);
  j["insights"] = r.insights ? to_json(*r.insights) : Json(nullptr);
  j["table"] = r.table ? to_json(*r.table) : Json(nullptr);
  if (r.error) {
    j["error"] = Json{{"code", r.error->code},
                      {"message", r.error->message},
                      {"detail", r.error->detail}};
  } else {
    j["error"] = nullptr;
  }
  return j;
}

}  // namespace t2i

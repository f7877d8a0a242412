#include "t2i/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "t2i/config.hpp"
#include "t2i/evalkit.hpp"
#include "t2i/pipeline.hpp"
#include "t2i/service.hpp"

namespace t2i {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

Json error_json(const Error& e) {
  return Json{{"error",
               {{"code", std::string(wire_code(e.code()))},
                {"message", user_message(e.code())},
                {"detail", e.what()}}}};
}

/// "Who are the top 10?" -> "who_are_the_top_10"
std::string artifact_name(const std::string& question) {
  std::string out;
  bool sep = false;
  for (unsigned char c : question) {
    if (std::isalnum(c)) {
      if (sep && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(c));
      sep = false;
    } else {
      sep = true;
    }
    if (out.size() >= 48) break;
  }
  return out.empty() ? "chart" : out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natural-language questions over CSV files, answered with SQL, charts and insights",
               "t2i"};
  app.require_subcommand(1);

  std::string file, question, chart, out_dir, pairs_path, config_path;
  bool offline = false;
  double threshold = kBleuThreshold;
  int port = 0;

  auto* profile_cmd = app.add_subcommand("profile", "Print the profile of a CSV file");
  profile_cmd->add_option("file", file, "CSV file")->required();

  auto* ask_cmd = app.add_subcommand("ask", "Answer a question about a CSV file");
  ask_cmd->add_option("file", file, "CSV file")->required();
  ask_cmd->add_option("question", question, "Question in plain English")->required();
  ask_cmd->add_option("--chart", chart, "Requested chart type")
      ->check([](const std::string& s) {
        return chart_type_from_string(s) ? std::string() : "unknown chart type " + s;
      });
  ask_cmd->add_flag("--offline", offline, "Deterministic translation and insights, no network");
  ask_cmd->add_option("--out", out_dir, "Directory for {name}.vl.json and {name}.html");
  ask_cmd->add_option("--config", config_path, "Config file");

  auto* eval_cmd = app.add_subcommand("eval", "Score predicted SQL against gold SQL");
  eval_cmd->add_option("pairs", pairs_path, "JSONL pair file")->required();
  eval_cmd->add_option("--threshold", threshold, "BLEU match threshold")
      ->check(CLI::Range(0.0, 1.0));

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--config", config_path, "Config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    err << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "t2i: " << e.what() << "\n";
    return 2;
  }

  auto config_or_default = [&]() {
    return config_path.empty() ? load_config() : load_config(config_path);
  };

  try {
    if (*profile_cmd) {
      Dataset ds = ingest_csv(read_file(file), table_name_from_filename(fs::path(file).filename().string()));
      out << to_json(ds.profile).dump(2) << "\n";
      return 0;
    }

    if (*ask_cmd) {
      Dataset ds = ingest_csv(read_file(file), table_name_from_filename(fs::path(file).filename().string()));
      Pipeline pipeline;
      if (!offline) {
        ServiceConfig cfg = config_or_default();
        pipeline = Pipeline(make_transport(cfg), cfg.llm);
      }
      QueryOptions opts;
      opts.offline = offline || !pipeline.llm_available();
      if (!chart.empty()) opts.chart_hint = chart_type_from_string(chart);
      PipelineResponse resp = pipeline.run(ds, question, opts);
      out << to_json(resp).dump(2) << "\n";
      if (!resp.ok()) {
        err << resp.error->code << ": " << resp.error->message << "\n";
        return 1;
      }
      err << "chart: " << to_string(resp.chart->chart_type) << ", rows: " << resp.table->rows.size()
          << "\n";
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::string name = artifact_name(question);
        write_file(fs::path(out_dir) / (name + ".vl.json"), to_vega_lite(*resp.chart).dump(2));
        write_file(fs::path(out_dir) / (name + ".html"), to_html(*resp.chart));
      }
      return 0;
    }

    if (*eval_cmd) {
      EvalSummary s = run_eval_suite(read_pairs_jsonl(read_file(pairs_path)), threshold);
      out << to_json(s).dump(2) << "\n";
      err << to_text_table(s);
      return 0;
    }

    if (*serve_cmd) {
      ServiceConfig cfg = config_or_default();
      if (port != 0) cfg.port = port;
      Service service(cfg);
      err << "listening on http://" << cfg.host << ":" << cfg.port << "\n";
      if (!service.listen(cfg.host, cfg.port)) {
        err << "t2i: cannot listen on " << cfg.host << ":" << cfg.port << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    out << error_json(e).dump(2) << "\n";
    err << wire_code(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace t2i

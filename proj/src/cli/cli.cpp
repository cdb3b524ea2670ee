#include "ahp/cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "ahp/core/random_index.hpp"
#include "ahp/error.hpp"
#include "ahp/io/json_codec.hpp"
#include "ahp/io/number_format.hpp"
#include "ahp/io/project.hpp"
#include "ahp/io/report.hpp"
#include "ahp/model/evaluation.hpp"
#include "ahp/service/http_api.hpp"
#include "ahp/service/session_manager.hpp"

namespace ahp::cli {

namespace {

using nlohmann::json;

// Raised for unreadable or unwritable files.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownNodeReference:
    case ErrorCode::DuplicateNodeId:
    case ErrorCode::VersionUnsupported:
    case ErrorCode::InvalidRiTable:
      return kFileError;
    case ErrorCode::InvalidArgument:
    case ErrorCode::OrderTooSmall:
      return kUsageError;
    default:
      return kValidationError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw FileError("cannot write '" + path + "'");
}

RiTable load_ri_table() {
  const char* path = std::getenv("AHP_RI_TABLE");
  if (path == nullptr || *path == '\0') return RiTable::standard();
  return io::parse_ri_table(read_file(path));
}

struct Options {
  int precision = 4;
  bool json_errors = false;
  std::string project_path;
  std::string node;
  std::string method = "geometric_mean";
  std::string out_path;
  std::string format = "text";
  bool as_json = false;
  bool strict = false;
  std::size_t order = 0;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string db_path = "ahp-sessions.db";
  bool in_memory = false;
  std::string static_dir;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err) {}

  int validate() {
    const auto doc = load_project();
    const auto checks = io::check_matrices(
        doc, opt_.strict ? ScaleMode::strict_scale : ScaleMode::reciprocal_only);
    bool ok = true;
    for (const auto& c : checks) {
      const std::string who = c.expert.empty() ? c.node_id : c.node_id + " [expert " + c.expert + "]";
      if (c.error) {
        ok = false;
        out_ << "FAIL  " << who << "  " << to_string(c.error->code()) << ": " << c.error->what()
             << "\n";
      } else {
        out_ << "OK    " << who << "  order " << c.order << "\n";
      }
    }
    if (!ok) {
      err_ << "validation failed\n";
      return kValidationError;
    }
    return kSuccess;
  }

  int weights() {
    const auto result = evaluated();
    bool found = opt_.node.empty();
    for (const auto& ev : result.nodes) {
      if (!opt_.node.empty() && ev.node_id != opt_.node) continue;
      found = true;
      const auto& node = result.hierarchy.node(ev.node_id);
      for (std::size_t k = 0; k < node.children.size(); ++k)
        out_ << ev.node_id << "  " << result.hierarchy.at(node.children[k]).id << "  "
             << num(ev.weights[k]) << "\n";
    }
    if (!found) {
      if (result.hierarchy.find(opt_.node))
        throw Error(ErrorCode::LeafNode, "node '" + opt_.node + "' is an indicator")
            .with_subject(opt_.node);
      throw Error(ErrorCode::UnknownNode, "unknown node '" + opt_.node + "'")
          .with_subject(opt_.node);
    }
    return kSuccess;
  }

  int check() {
    const auto result = evaluated();
    for (const auto& ev : result.nodes) {
      const auto& r = ev.report;
      out_ << ev.node_id << "  m=" << r.order << "  mu_max=" << num(r.mu_max)
           << "  CI=" << num(r.ci) << "  RI=" << num(r.ri) << "  CR=" << num(r.cr) << ' '
           << (r.passed ? "PASS" : "FAIL") << "\n";
    }
    if (!result.all_passed) {
      err_ << "consistency check failed (CR >= 0.1)\n";
      return kConsistencyFailure;
    }
    return kSuccess;
  }

  int evaluate_cmd() {
    const auto result = evaluated();
    if (opt_.as_json)
      out_ << io::to_json(result).dump(2) << "\n";
    else
      out_ << io::export_report(result, io::ReportFormat::text, opt_.precision);
    if (!opt_.out_path.empty())
      write_file(opt_.out_path, io::export_report(result, io::ReportFormat::csv));
    if (!result.all_passed) {
      err_ << "consistency check failed (CR >= 0.1)\n";
      return kConsistencyFailure;
    }
    return kSuccess;
  }

  int rank_cmd() {
    const auto table = rank(evaluated());
    std::size_t position = 0;
    for (const auto& row : table.rows)
      out_ << ++position << "  " << row.leaf_id << "  " << num(row.global_weight) << "  "
           << row.parent_id << "  " << num(row.local_weight) << "  " << row.label << "\n";
    return kSuccess;
  }

  int report() {
    const auto result = evaluated();
    const auto text = io::export_report(result, io::parse_report_format(opt_.format), opt_.precision);
    if (opt_.out_path.empty())
      out_ << text;
    else
      write_file(opt_.out_path, text);
    return kSuccess;
  }

  int ri_simulate() {
    out_ << num(simulate_ri(opt_.order, opt_.samples, opt_.seed, opt_.threads)) << "\n";
    return kSuccess;
  }

  int serve() {
    std::unique_ptr<service::SessionStore> store;
    if (opt_.in_memory)
      store = std::make_unique<service::MemorySessionStore>();
    else
      store = std::make_unique<service::SqliteSessionStore>(opt_.db_path);
    service::SessionManager sessions(std::move(store), load_ri_table());
    httplib::Server server;
    std::optional<std::filesystem::path> static_dir;
    if (!opt_.static_dir.empty()) static_dir = opt_.static_dir;
    service::mount_api(server, sessions, static_dir);
    err_ << "serving on http://" << opt_.host << ":" << opt_.port << " ("
         << sessions.size() << " stored sessions)\n";
    if (!server.listen(opt_.host, opt_.port))
      throw FileError("cannot listen on " + opt_.host + ":" + std::to_string(opt_.port));
    return kSuccess;
  }

 private:
  std::string num(double v) const { return io::format_fixed(v, opt_.precision); }

  io::ProjectDocument load_project() const { return io::parse_project(read_file(opt_.project_path)); }

  EvaluationResult evaluated() const {
    const auto doc = load_project();
    const auto ri = load_ri_table();
    return evaluate(io::build_hierarchy(doc, parse_aggregation_method(opt_.method)), ri);
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
};

void report_failure(std::ostream& err, bool as_json, int exit_code, std::string_view code,
                    const std::string& message, const Error* error = nullptr) {
  if (!as_json) {
    err << "error: " << message << "\n";
    return;
  }
  json j = {{"exit_code", exit_code}, {"code", code}, {"message", message}};
  if (error) {
    if (error->position()) {
      j["line"] = error->position()->line;
      j["column"] = error->position()->column;
    }
    if (!error->subject().empty()) j["node"] = error->subject();
  }
  err << j.dump() << "\n";
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Analytic hierarchy process: weights, consistency and ranking", "ahp"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();
  app.add_option("--precision", opt.precision, "Decimals in printed numbers")
      ->check(CLI::Range(0, 17));
  app.add_flag("--json-errors", opt.json_errors, "Print diagnostics as JSON on stderr");

  auto project_arg = [&](CLI::App* sub) {
    sub->add_option("project", opt.project_path, "Project file (*.ahp.json)")->required();
  };
  auto method_opt = [&](CLI::App* sub) {
    sub->add_option("--aggregate", opt.method,
                    "How expert matrices are combined: geometric_mean or arithmetic_mean");
  };

  auto* validate = app.add_subcommand("validate", "Validate every judgment matrix");
  project_arg(validate);
  validate->add_flag("--strict", opt.strict, "Require entries within the 1/9..9 scale");

  auto* weights = app.add_subcommand("weights", "Local weight vector of one node (or all)");
  project_arg(weights);
  weights->add_option("--node", opt.node, "Internal node id");
  method_opt(weights);

  auto* check = app.add_subcommand("check", "Consistency test of every judgment matrix");
  project_arg(check);
  method_opt(check);

  auto* evaluate_sub = app.add_subcommand("evaluate", "Full evaluation with report");
  project_arg(evaluate_sub);
  method_opt(evaluate_sub);
  evaluate_sub->add_option("--out", opt.out_path, "Also write the CSV report here");
  evaluate_sub->add_flag("--json", opt.as_json, "Print the evaluation as JSON");

  auto* rank_sub = app.add_subcommand("rank", "Indicators ranked by composite weight");
  project_arg(rank_sub);
  method_opt(rank_sub);

  auto* ri = app.add_subcommand("ri-simulate", "Monte Carlo random index");
  ri->add_option("--order", opt.order, "Matrix order (>= 3)")->required();
  ri->add_option("--samples", opt.samples, "Number of random matrices")->check(CLI::PositiveNumber);
  ri->add_option("--seed", opt.seed, "Generator seed");
  ri->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* report = app.add_subcommand("report", "Export the evaluation report");
  project_arg(report);
  method_opt(report);
  report->add_option("--format", opt.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  report->add_option("--out", opt.out_path, "Write to a file instead of stdout");

  auto* serve = app.add_subcommand("serve", "Run the elicitation HTTP service");
  serve->add_option("--port", opt.port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", opt.host, "Bind address");
  serve->add_option("--db", opt.db_path, "SQLite file holding sessions");
  serve->add_flag("--in-memory", opt.in_memory, "Do not persist sessions");
  serve->add_option("--static-dir", opt.static_dir, "Directory served at /");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    const bool json_errors =
        std::find(args.begin(), args.end(), "--json-errors") != args.end();
    report_failure(err, json_errors, kUsageError, "UsageError", e.what());
    if (!json_errors) err << "run 'ahp --help' for usage\n";
    return kUsageError;
  }

  Runner runner(opt, out, err);
  try {
    if (*validate) return runner.validate();
    if (*weights) return runner.weights();
    if (*check) return runner.check();
    if (*evaluate_sub) return runner.evaluate_cmd();
    if (*rank_sub) return runner.rank_cmd();
    if (*ri) return runner.ri_simulate();
    if (*report) return runner.report();
    if (*serve) return runner.serve();
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    report_failure(err, opt.json_errors, code, to_string(e.code()), e.what(), &e);
    return code;
  } catch (const FileError& e) {
    report_failure(err, opt.json_errors, kFileError, "FileError", e.what());
    return kFileError;
  } catch (const std::exception& e) {
    report_failure(err, opt.json_errors, kFileError, "IOError", e.what());
    return kFileError;
  }
  return kUsageError;
}

}  // namespace ahp::cli

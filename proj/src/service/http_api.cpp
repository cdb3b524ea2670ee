#include "ahp/service/http_api.hpp"

#include <charconv>

#include <httplib.h>

#include "ahp/io/json_codec.hpp"

namespace ahp::service {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message,
                json details = json::object()) {
  send_json(res, {{"code", to_string(code)}, {"message", message}, {"details", details}},
            http_status(code));
}

json parse_body(const httplib::Request& req) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed JSON body: ") + e.what());
  }
}

template <typename T>
T field(const json& body, const char* name) {
  if (!body.contains(name)) throw Error(ErrorCode::BadRequest, std::string("missing field '") + name + "'");
  try {
    return body.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::BadRequest, std::string("field '") + name + "' has the wrong type");
  }
}

// Judgment values arrive as numbers or as "a/b" fractions such as "1/3".
double judgment_value(const json& body) {
  if (!body.contains("value")) throw Error(ErrorCode::BadRequest, "missing field 'value'");
  const auto& v = body["value"];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    const auto slash = text.find('/');
    auto number = [&](std::string_view s) {
      double out = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::BadRequest, "unreadable judgment value '" + text + "'");
      return out;
    };
    if (slash == std::string::npos) return number(text);
    return number(std::string_view(text).substr(0, slash)) /
           number(std::string_view(text).substr(slash + 1));
  }
  throw Error(ErrorCode::BadRequest, "field 'value' must be a number or a fraction string");
}

json feedback_json(const JudgmentFeedback& f) {
  const auto& p = f.progress;
  json out = {{"revision", f.revision},
              {"expert", p.expert},
              {"node", p.node_id},
              {"order", p.order},
              {"pairs_present", p.pairs_present},
              {"pairs_required", p.pairs_required},
              {"status", to_string(p.status)},
              {"hotspots", io::to_json(p.hotspots)}};
  if (p.report) out["consistency"] = io::to_json(*p.report);
  if (!p.weights.empty()) out["weights"] = p.weights;
  return out;
}

// Runs a handler and maps library errors onto the JSON error envelope.
template <typename Fn>
auto guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e.code(), e.what(), e.details());
    } catch (const Error& e) {
      json details = json::object();
      if (!e.subject().empty()) details["subject"] = e.subject();
      if (e.entry()) details["entry"] = {e.entry()->first, e.entry()->second};
      send_error(res, e.code(), e.what(), details);
    } catch (const std::exception& e) {
      send_json(res, {{"code", "InternalError"}, {"message", e.what()}, {"details", json::object()}},
                500);
    }
  };
}

std::string route(const std::string& tail) { return std::string(kApiPrefix) + tail; }

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadRequest:
    case ErrorCode::BadPair:
    case ErrorCode::ScaleOutOfRange:
    case ErrorCode::WeightOutOfRange:
    case ErrorCode::RootNode:
    case ErrorCode::InvalidArgument:
      return 400;
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownNode:
      return 404;
    case ErrorCode::StaleRevision:
    case ErrorCode::NoEvaluation:
      return 409;
    default:
      return 422;
  }
}

void mount_api(httplib::Server& server, SessionManager& sessions,
               const std::optional<std::filesystem::path>& static_dir) {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, {{"status", "ok"}});
  });

  server.Post(route("/sessions"), guarded([&sessions](const auto& req, auto& res) {
    io::ProjectDocument project;
    try {
      project = io::parse_project(req.body);
    } catch (const Error& e) {
      json details = {{"cause", to_string(e.code())}};
      if (e.position()) details["line"] = e.position()->line, details["column"] = e.position()->column;
      throw ServiceError(ErrorCode::InvalidProject, e.what(), details);
    }
    const auto id = sessions.create(std::move(project));
    send_json(res, {{"session_id", id}}, 201);
  }));

  const std::string session_re = route("/sessions/([0-9a-f]+)");

  server.Get(session_re, guarded([&sessions](const auto& req, auto& res) {
    send_json(res, sessions.state(req.matches[1]));
  }));

  server.Put(session_re + "/judgments", guarded([&sessions](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const auto i = field<long long>(body, "i");
    const auto j = field<long long>(body, "j");
    if (i < 0 || j < 0) throw Error(ErrorCode::BadPair, "pair indices must be non-negative");
    std::optional<std::uint64_t> revision;
    if (body.contains("revision") && !body["revision"].is_null())
      revision = field<std::uint64_t>(body, "revision");
    const auto feedback = sessions.submit(
        req.matches[1], field<std::string>(body, "expert"), field<std::string>(body, "node"),
        static_cast<std::size_t>(i), static_cast<std::size_t>(j), judgment_value(body), revision);
    send_json(res, feedback_json(feedback));
  }));

  server.Post(session_re + "/evaluate", guarded([&sessions](const auto& req, auto& res) {
    const auto body = req.body.empty() ? json::object() : parse_body(req);
    auto method = AggregationMethod::geometric_mean;
    if (body.contains("method")) {
      try {
        method = parse_aggregation_method(field<std::string>(body, "method"));
      } catch (const Error& e) {
        throw Error(ErrorCode::BadRequest, e.what());
      }
    }
    const auto cached = sessions.evaluate(req.matches[1], method);
    json out = io::to_json(cached.result);
    out["revision"] = cached.revision;
    out["method"] = to_string(cached.method);
    send_json(res, out);
  }));

  server.Post(session_re + "/what-if", guarded([&sessions](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const auto node = field<std::string>(body, "node");
    const auto weight = field<double>(body, "weight");
    send_json(res, {{"node", node},
                    {"weight", weight},
                    {"ranking", io::to_json(sessions.what_if(req.matches[1], node, weight))}});
  }));

  server.Get(session_re + "/report", guarded([&sessions](const auto& req, auto& res) {
    const std::string format = req.has_param("format") ? req.get_param_value("format") : "text";
    io::ReportFormat f;
    try {
      f = io::parse_report_format(format);
    } catch (const Error& e) {
      throw Error(ErrorCode::BadRequest, e.what());
    }
    res.set_content(sessions.report(req.matches[1], f),
                    f == io::ReportFormat::csv ? "text/csv; charset=utf-8"
                                               : "text/plain; charset=utf-8");
  }));

  if (static_dir) {
    server.set_mount_point("/", static_dir->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(
          "<!doctype html><title>AHP elicitation</title>"
          "<p>The HTTP API is served under /api/v1. Start the server with "
          "--static-dir to serve the elicitation UI here.</p>",
          "text/html; charset=utf-8");
    });
  }
}

}  // namespace ahp::service

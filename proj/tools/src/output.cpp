#include <cstdlib>
#include <sstream>
#include <string>

#include "permabound/cli/commands.hpp"
#include "permabound/parallel.hpp"

namespace permabound::cli {

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return v.dump();
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("PERMABOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return resolve_threads(0);
}

Json config_json(const RunConfig& cfg) {
  Json c;
  c["seed"] = cfg.seed;
  c["tol"] = json_number(cfg.tol);
  c["max_iter"] = cfg.max_iter;
  return c;
}

std::string render(const CommandResult& result, Format format) {
  if (format == Format::kCsv) {
    std::ostringstream out;
    for (std::size_t c = 0; c < result.table.columns.size(); ++c) out << (c ? "," : "") << result.table.columns[c];
    out << '\n';
    for (const auto& row : result.table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
      out << '\n';
    }
    return out.str();
  }
  Json doc = result.report;
  Json rows = Json::array();
  for (const auto& row : result.table.rows) {
    Json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[result.table.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  doc[result.table.name] = std::move(rows);
  doc["violations"] = result.violations;
  doc["ok"] = result.violations == 0;
  return dump_json(doc);
}

}  // namespace permabound::cli

#include "permabound/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "permabound/error.hpp"
#include "permabound/serialize.hpp"

namespace permabound {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, int line_no) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = content.find(',', start);
      row.push_back(parse_number(content.substr(start, comma == std::string_view::npos ? content.npos : comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kInvalidMatrix, "ragged row at line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kParseError, "empty matrix file");
  return Matrix::from_rows(rows);
}

Matrix read_matrix_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorCode::kParseError, "expected an object with an \"entries\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : doc["entries"]) {
    if (!r.is_array()) throw Error(ErrorCode::kParseError, "each entry row must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw Error(ErrorCode::kParseError, "matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorCode::kInvalidMatrix, "ragged row in JSON matrix");
    rows.push_back(std::move(row));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(rows.size())) {
      throw Error(ErrorCode::kInvalidMatrix, "\"n\" does not match the number of rows");
    }
  }
  if (rows.empty()) throw Error(ErrorCode::kParseError, "empty matrix");
  return Matrix::from_rows(rows);
}

Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  const std::string_view content = trim(text);
  if (!content.empty() && content.front() == '{') return read_matrix_json(in);
  return read_matrix_csv(in);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str());
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_json(std::ostream& out, const Matrix& m) {
  write_json(out, to_json(m));
  out << '\n';
}

}  // namespace permabound

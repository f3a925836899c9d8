#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "permabound/matrix.hpp"

namespace permabound {

// Matrix files are either CSV (one row per line, comma separated) or JSON of
// the form {"n": 3, "entries": [[...], ...]}. Ragged rows, non-square input
// and entries below -1e-9 are rejected with InvalidMatrix / ParseError.

Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_json(std::istream& in);
Matrix parse_matrix(const std::string& text);  // sniffs JSON vs CSV
Matrix read_matrix_file(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_json(std::ostream& out, const Matrix& m);

}  // namespace permabound

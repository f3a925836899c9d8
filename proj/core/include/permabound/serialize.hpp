#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "permabound/betheopt.hpp"
#include "permabound/bound_report.hpp"
#include "permabound/capacity.hpp"
#include "permabound/log_value.hpp"
#include "permabound/matrix.hpp"
#include "permabound/randmodels.hpp"

namespace permabound {

// Insertion-ordered so reports keep their field order on output.
using Json = nlohmann::ordered_json;

/// 17 significant digits ("%.17g"); non-finite values become "nan", "inf", "-inf".
std::string format_double(double x);

/// Writes `doc` with two-space indentation. Floating-point numbers go through
/// format_double; non-finite ones are emitted as JSON strings.
void write_json(std::ostream& out, const Json& doc);
std::string dump_json(const Json& doc);

/// A double as a JSON value: a number when finite, otherwise its string form.
Json json_number(double x);

Json to_json(const Matrix& m);
/// log() of the value, so zero becomes "-inf".
Json to_json(const LogValue& v);
Json to_json(const BoundReport& r);
Json to_json(const CWResult& r, bool include_q = true);
Json to_json(const CapacityResult& r);
Json to_json(const McEstimate& e);

}  // namespace permabound

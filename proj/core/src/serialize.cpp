#include "permabound/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace permabound {

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void write_value(std::ostream& out, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t k = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++k) {
        indent(out, depth + 1);
        out << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), depth + 1);
        if (k + 1 < v.size()) out << ',';
        out << '\n';
      }
      indent(out, depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line; matrices become one row per line.
      bool flat = true;
      for (const auto& e : v) flat = flat && is_scalar(e);
      if (flat) {
        out << '[';
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (k) out << ", ";
          write_value(out, v[k], depth + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        indent(out, depth + 1);
        write_value(out, v[k], depth + 1);
        if (k + 1 < v.size()) out << ',';
        out << '\n';
      }
      indent(out, depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (std::isfinite(x)) {
        out << format_double(x);
      } else {
        out << '"' << format_double(x) << '"';
      }
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_json(std::ostream& out, const Json& doc) {
  write_value(out, doc, 0);
  out << '\n';
}

std::string dump_json(const Json& doc) {
  std::ostringstream os;
  write_json(os, doc);
  return os.str();
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.n()}, {"entries", std::move(rows)}};
}

Json to_json(const LogValue& v) { return json_number(v.log()); }

Json to_json(const BoundReport& r) {
  auto opt = [](const std::optional<double>& x) { return x ? json_number(*x) : Json(nullptr); };
  Json out;
  out["matrix_id"] = r.matrix_id;
  out["n"] = r.n;
  out["log_per_exact"] = r.log_per_exact ? to_json(*r.log_per_exact) : Json(nullptr);
  out["log_F"] = json_number(r.log_F);
  out["log_max_cw"] = opt(r.log_max_cw);
  out["log_lms"] = json_number(r.log_lms);
  out["log_sd"] = json_number(r.log_sd);
  out["log_vdw"] = json_number(r.log_vdw);
  out["log_bregman"] = opt(r.log_bregman);
  out["log_holder_upper"] = opt(r.log_holder_upper);
  out["log_cpr_bound"] = json_number(r.log_cpr_bound);
  out["log_gurvits_bound"] = json_number(r.log_gurvits_bound);
  return out;
}

Json to_json(const CWResult& r, bool include_q) {
  Json out;
  out["value"] = json_number(r.value);
  out["duality_gap"] = json_number(r.duality_gap);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  if (include_q) out["q_star"] = to_json(r.q_star);
  return out;
}

Json to_json(const CapacityResult& r) {
  Json x = Json::array();
  for (double v : r.minimizer) x.push_back(json_number(v));
  Json out;
  out["value"] = json_number(r.value);
  out["minimizer"] = std::move(x);
  out["gradient_norm"] = json_number(r.gradient_norm);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  return out;
}

Json to_json(const McEstimate& e) {
  Json out;
  out["samples"] = e.samples;
  out["mean"] = json_number(e.mean);
  out["std_error"] = json_number(e.std_error);
  out["log_domain"] = e.log_domain;
  out["seed"] = e.seed;
  return out;
}

}  // namespace permabound

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hencky/duality.hpp"
#include "hencky/errors.hpp"
#include "hencky/sweeps.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Input parsing (JSON records of deformation gradients or stress tensors) and
// report serialization. Reports are written by a hand-rolled emitter with a
// fixed field order and 17-significant-digit numbers, so identical inputs
// produce byte-identical files.

namespace hencky::io {

// shortest representation that still round-trips the exact double
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// a JSON number, or null when the value is not finite
inline std::string number_or_null(double x) {
  return std::isfinite(x) ? format_double(x) : std::string("null");
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string json_of(const Mat3& m) {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    out += i == 0 ? "[" : ",[";
    for (int j = 0; j < 3; ++j) {
      if (j) out += ",";
      out += format_double(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

inline std::string json_of(const Sym3& s) { return json_of(mat(s)); }

// --- input -----------------------------------------------------------------

namespace detail {

inline nlohmann::json parse_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("input is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("input must be a top-level array of records");
  return doc;
}

inline Mat3 parse_matrix(const nlohmann::json& j, std::size_t record, const char* field) {
  const auto complain = [&](const std::string& why) -> ParseError {
    return ParseError("record " + std::to_string(record) + ": field \"" + field + "\" " +
                      why);
  };
  if (!j.is_array() || j.size() != 3) throw complain("must be an array of 3 rows");
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != 3)
      throw complain("row " + std::to_string(i) + " must hold exactly 3 numbers");
    for (std::size_t k = 0; k < 3; ++k) {
      if (!row[k].is_number())
        throw complain("entry (" + std::to_string(i) + "," + std::to_string(k) +
                       ") is not a number");
      m(static_cast<int>(i), static_cast<int>(k)) = row[k].get<double>();
    }
  }
  if (!is_finite(m)) throw complain("has non-finite entries");
  return m;
}

}  // namespace detail

// [{"F": [[...],[...],[...]]}, ...]; validity of each F (determinant floor)
// is the caller's per-record concern, not a parse matter
inline std::vector<Mat3> parse_defgrad_records(const std::string& text) {
  const nlohmann::json doc = detail::parse_document(text);
  std::vector<Mat3> out;
  out.reserve(doc.size());
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& rec = doc[r];
    if (!rec.is_object() || !rec.contains("F"))
      throw ParseError("record " + std::to_string(r) + ": missing field \"F\"");
    out.push_back(detail::parse_matrix(rec["F"], r, "F"));
  }
  return out;
}

// [{"T": [[...]]}]: full 3x3 with symmetry checked, then exactly symmetrized
inline std::vector<Sym3> parse_stress_records(const std::string& text) {
  const nlohmann::json doc = detail::parse_document(text);
  std::vector<Sym3> out;
  out.reserve(doc.size());
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& rec = doc[r];
    if (!rec.is_object() || !rec.contains("T"))
      throw ParseError("record " + std::to_string(r) + ": missing field \"T\"");
    const Mat3 m = detail::parse_matrix(rec["T"], r, "T");
    const double asym = frobenius_norm(m - transpose(m)) /
                        std::max(1.0, frobenius_norm(m));
    if (asym > tol::symmetry_parse_rel)
      throw ParseError("record " + std::to_string(r) +
                       ": field \"T\" is not symmetric (relative asymmetry " +
                       format_double(asym) + ")");
    out.push_back(sym(m));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
  if (!out) throw Error("failed writing output file: " + path);
}

// --- stress reports ----------------------------------------------------------

namespace detail {

inline std::string opt_tensor(const std::optional<Sym3>& t) {
  return t ? json_of(*t) : std::string("null");
}

inline std::string opt_number(const std::optional<double>& x) {
  return x ? number_or_null(*x) : std::string("null");
}

inline void csv_sym3_cells(std::string& line, const std::optional<Sym3>& t) {
  if (t) {
    line += "," + format_double(t->xx) + "," + format_double(t->yy) + "," +
            format_double(t->zz) + "," + format_double(t->xy) + "," +
            format_double(t->xz) + "," + format_double(t->yz);
  } else {
    line += ",,,,,,";
  }
}

// absolute Cauchy stress, derivable whenever the algebraic path evaluated
inline std::optional<Sym3> sigma_cauchy_of(const StressReport& r) {
  if (!r.sigma_hb_b || !std::isfinite(r.rho)) return std::nullopt;
  return r.rho * (*r.sigma_hb_b);
}

}  // namespace detail

inline std::string stress_reports_json(const std::vector<StressReport>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const StressReport& r = reports[i];
    out += "  {\n";
    out += "    \"F\": " + json_of(r.f) + ",\n";
    out += "    \"mass_ratio\": " + number_or_null(r.mass_ratio) + ",\n";
    out += "    \"rho0\": " + number_or_null(r.rho0) + ",\n";
    out += "    \"rho\": " + number_or_null(r.rho) + ",\n";
    out += "    \"sigma_pushforward\": " + detail::opt_tensor(r.sigma_pushforward) + ",\n";
    out += "    \"sigma_hB_B\": " + detail::opt_tensor(r.sigma_hb_b) + ",\n";
    out += "    \"sigma_grad_fd\": " + detail::opt_tensor(r.sigma_grad_fd) + ",\n";
    out += "    \"sigma_grad_chain\": " + detail::opt_tensor(r.sigma_grad_chain) + ",\n";
    out += "    \"sigma_cauchy\": " + detail::opt_tensor(detail::sigma_cauchy_of(r)) + ",\n";
    out += "    \"residuals\": {\n";
    out += "      \"push_vs_hb\": " + detail::opt_number(r.residuals.push_vs_hb) + ",\n";
    out += "      \"push_vs_chain\": " + detail::opt_number(r.residuals.push_vs_chain) + ",\n";
    out += "      \"hb_vs_chain\": " + detail::opt_number(r.residuals.hb_vs_chain) + ",\n";
    out += "      \"push_vs_fd\": " + detail::opt_number(r.residuals.push_vs_fd) + ",\n";
    out += "      \"hb_vs_fd\": " + detail::opt_number(r.residuals.hb_vs_fd) + ",\n";
    out += "      \"chain_vs_fd\": " + detail::opt_number(r.residuals.chain_vs_fd) + "\n";
    out += "    },\n";
    out += "    \"pass\": " + std::string(r.pass ? "true" : "false") + ",\n";
    out += "    \"errors\": [";
    for (std::size_t e = 0; e < r.errors.size(); ++e) {
      if (e) out += ", ";
      out += "\"" + json_escape(r.errors[e]) + "\"";
    }
    out += "]\n";
    out += i + 1 < reports.size() ? "  },\n" : "  }\n";
  }
  out += "]\n";
  return out;
}

inline std::string stress_reports_csv(const std::vector<StressReport>& reports) {
  std::string out =
      "record,pass,mass_ratio,rho0,rho,"
      "f_00,f_01,f_02,f_10,f_11,f_12,f_20,f_21,f_22,"
      "pushforward_xx,pushforward_yy,pushforward_zz,pushforward_xy,pushforward_xz,pushforward_yz,"
      "hb_b_xx,hb_b_yy,hb_b_zz,hb_b_xy,hb_b_xz,hb_b_yz,"
      "grad_fd_xx,grad_fd_yy,grad_fd_zz,grad_fd_xy,grad_fd_xz,grad_fd_yz,"
      "grad_chain_xx,grad_chain_yy,grad_chain_zz,grad_chain_xy,grad_chain_xz,grad_chain_yz,"
      "cauchy_xx,cauchy_yy,cauchy_zz,cauchy_xy,cauchy_xz,cauchy_yz,"
      "res_push_vs_hb,res_push_vs_chain,res_hb_vs_chain,res_push_vs_fd,res_hb_vs_fd,res_chain_vs_fd,"
      "errors\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const StressReport& r = reports[i];
    std::string line = std::to_string(i);
    line += r.pass ? ",true" : ",false";
    line += "," + format_double(r.mass_ratio) + "," + format_double(r.rho0) + "," +
            (std::isfinite(r.rho) ? format_double(r.rho) : std::string());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) line += "," + format_double(r.f(a, b));
    detail::csv_sym3_cells(line, r.sigma_pushforward);
    detail::csv_sym3_cells(line, r.sigma_hb_b);
    detail::csv_sym3_cells(line, r.sigma_grad_fd);
    detail::csv_sym3_cells(line, r.sigma_grad_chain);
    detail::csv_sym3_cells(line, detail::sigma_cauchy_of(r));
    for (const auto& res : {r.residuals.push_vs_hb, r.residuals.push_vs_chain,
                            r.residuals.hb_vs_chain, r.residuals.push_vs_fd,
                            r.residuals.hb_vs_fd, r.residuals.chain_vs_fd})
      line += "," + (res ? format_double(*res) : std::string());
    std::string errs;
    for (std::size_t e = 0; e < r.errors.size(); ++e) {
      if (e) errs += "; ";
      errs += r.errors[e];
    }
    line += "," + csv_field(errs);
    out += line + "\n";
  }
  return out;
}

// --- verification reports ----------------------------------------------------

struct VerifyReport {
  std::uint64_t seed = 42;
  int samples = 200;
  std::vector<std::string> laws;
  PathTolerances tolerances{};
  std::vector<SuiteResult> suites;
  bool pass = false;
};

inline std::string verify_report_json(const VerifyReport& rep) {
  std::string out = "{\n";
  out += "  \"seed\": " + std::to_string(rep.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(rep.samples) + ",\n";
  out += "  \"laws\": [";
  for (std::size_t i = 0; i < rep.laws.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(rep.laws[i]) + "\"";
  }
  out += "],\n";
  out += "  \"tolerances\": {\"exact_rel\": " + format_double(rep.tolerances.exact_rel) +
         ", \"fd_rel\": " + format_double(rep.tolerances.fd_rel) + "},\n";
  out += "  \"suites\": [\n";
  for (std::size_t i = 0; i < rep.suites.size(); ++i) {
    const SuiteResult& s = rep.suites[i];
    out += "    {\"name\": \"" + json_escape(s.name) + "\", \"samples\": " +
           std::to_string(s.samples) + ", \"failures\": " + std::to_string(s.failures) +
           ", \"metrics\": {";
    for (std::size_t m = 0; m < s.metrics.size(); ++m) {
      if (m) out += ", ";
      out += "\"" + json_escape(s.metrics[m].first) +
             "\": " + number_or_null(s.metrics[m].second);
    }
    out += "}, \"pass\": " + std::string(s.pass() ? "true" : "false") + "}";
    out += i + 1 < rep.suites.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"pass\": " + std::string(rep.pass ? "true" : "false") + "\n";
  out += "}\n";
  return out;
}

inline std::string verify_report_csv(const VerifyReport& rep) {
  std::string out = "suite,samples,failures,pass,metrics\n";
  for (const SuiteResult& s : rep.suites) {
    std::string metrics;
    for (std::size_t m = 0; m < s.metrics.size(); ++m) {
      if (m) metrics += ";";
      metrics += s.metrics[m].first + "=" + format_double(s.metrics[m].second);
    }
    out += csv_field(s.name) + "," + std::to_string(s.samples) + "," +
           std::to_string(s.failures) + "," + (s.pass() ? "true" : "false") + "," +
           csv_field(metrics) + "\n";
  }
  return out;
}

// --- inversion records --------------------------------------------------------

struct InvertRecord {
  Sym3 t{};
  std::optional<Sym3> ln_b;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::optional<double> roundtrip_residual;
  std::optional<std::string> error;
  bool flagged = false;  // non-converged, errored, or round trip out of tolerance
};

inline std::string invert_records_json(const std::vector<InvertRecord>& records) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const InvertRecord& r = records[i];
    out += "  {\n";
    out += "    \"T\": " + json_of(r.t) + ",\n";
    out += "    \"ln_B\": " + detail::opt_tensor(r.ln_b) + ",\n";
    out += "    \"value\": " + number_or_null(r.value) + ",\n";
    out += "    \"iterations\": " + std::to_string(r.iterations) + ",\n";
    out += "    \"converged\": " + std::string(r.converged ? "true" : "false") + ",\n";
    out += "    \"gradient_norm\": " + number_or_null(r.gradient_norm) + ",\n";
    out += "    \"roundtrip_residual\": " + detail::opt_number(r.roundtrip_residual) + ",\n";
    out += "    \"flagged\": " + std::string(r.flagged ? "true" : "false") + ",\n";
    out += "    \"error\": " +
           (r.error ? "\"" + json_escape(*r.error) + "\"" : std::string("null")) + "\n";
    out += i + 1 < records.size() ? "  },\n" : "  }\n";
  }
  out += "]\n";
  return out;
}

inline std::string invert_records_csv(const std::vector<InvertRecord>& records) {
  std::string out =
      "record,converged,flagged,iterations,value,gradient_norm,roundtrip_residual,"
      "ln_b_xx,ln_b_yy,ln_b_zz,ln_b_xy,ln_b_xz,ln_b_yz,error\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const InvertRecord& r = records[i];
    std::string line = std::to_string(i);
    line += r.converged ? ",true" : ",false";
    line += r.flagged ? ",true" : ",false";
    line += "," + std::to_string(r.iterations);
    line += "," + format_double(r.value);
    line += "," + format_double(r.gradient_norm);
    line += "," + (r.roundtrip_residual ? format_double(*r.roundtrip_residual)
                                        : std::string());
    detail::csv_sym3_cells(line, r.ln_b);
    line += "," + csv_field(r.error ? *r.error : std::string());
    out += line + "\n";
  }
  return out;
}

// --- quadrature convergence table ----------------------------------------------

inline std::string dexp_table_json(const DexpTable& t) {
  std::string out = "{\n";
  out += "  \"seed\": " + std::to_string(t.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(t.samples) + ",\n";
  out += "  \"norm_bound\": " + format_double(t.norm_bound) + ",\n";
  out += "  \"monotone\": " + std::string(t.monotone ? "true" : "false") + ",\n";
  out += "  \"rows\": [\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out += "    {\"nodes\": " + std::to_string(t.rows[i].nodes) +
           ", \"max_rel_error\": " + format_double(t.rows[i].max_rel_error) +
           ", \"zero_case_error\": " + format_double(t.rows[i].zero_case_error) + "}";
    out += i + 1 < t.rows.size() ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

inline std::string dexp_table_csv(const DexpTable& t) {
  std::string out = "nodes,max_rel_error,zero_case_error\n";
  for (const DexpTableRow& row : t.rows)
    out += std::to_string(row.nodes) + "," + format_double(row.max_rel_error) + "," +
           format_double(row.zero_case_error) + "\n";
  return out;
}

}  // namespace hencky::io

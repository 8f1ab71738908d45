#ifndef CONDBOUND_HARNESS_REPORT_HPP
#define CONDBOUND_HARNESS_REPORT_HPP

// JSON-lines and CSV report writers.

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>

#include "json.hpp"

#include "condbound/harness/verify.hpp"

namespace condbound::harness {

enum class Format { jsonl, csv };

inline Format parse_format(const std::string& s) {
  if (s == "jsonl") return Format::jsonl;
  if (s == "csv") return Format::csv;
  throw DomainError("unknown format '" + s + "'");
}

class ReportError : public std::runtime_error {
 public:
  explicit ReportError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const VerificationRecord& r) {
  nlohmann::ordered_json j;
  j["instance_id"] = r.instance_id;
  j["family"] = r.family;
  j["actual_log2"] = detail::number_or_null(r.actual_log2);
  j["bound_log2"] = detail::number_or_null(r.bound_log2);
  j["margin_log2"] = detail::number_or_null(r.margin_log2);
  j["status"] = to_string(r.status);
  j["witness"] = r.witness;
  return j;
}

inline nlohmann::ordered_json to_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["family"] = s.family;
  j["theorem"] = s.theorem;
  j["precision_bits"] = s.precision_bits;
  j["total"] = s.total;
  nlohmann::ordered_json c;
  for (Status st : {Status::ok, Status::violation, Status::degenerate_skipped, Status::inconclusive, Status::reported})
    c[to_string(st)] = s.count(st);
  j["counts"] = c;
  j["min_margin_log2"] = detail::number_or_null(s.min_margin_log2);
  j["argmin_instance_id"] = s.argmin_id;
  j["argmin_witness"] = s.argmin_witness;
  j["normalization"] = s.normalization;
  j["timestamp"] = s.timestamp;
  return j;
}

inline constexpr const char* kCsvHeader = "instance_id,family,actual_log2,bound_log2,margin_log2,status,witness";

inline std::string to_csv(const VerificationRecord& r) {
  return detail::csv_field(r.instance_id) + ',' + detail::csv_field(r.family) + ',' + detail::csv_number(r.actual_log2) +
         ',' + detail::csv_number(r.bound_log2) + ',' + detail::csv_number(r.margin_log2) + ',' + to_string(r.status) +
         ',' + detail::csv_field(r.witness);
}

/// Streams records to a file (or stdout for "-"). JSONL ends with the
/// summary object; CSV holds records only.
class ReportWriter {
 public:
  ReportWriter(const std::string& path, Format fmt) : path_(path), fmt_(fmt) {
    if (path == "-" || path.empty()) {
      os_ = &std::cout;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::out | std::ios::trunc);
      if (!*file_) throw ReportError("cannot open report '" + path + "': " + std::strerror(errno));
      os_ = file_.get();
    }
    if (fmt_ == Format::csv) *os_ << kCsvHeader << '\n';
    check();
  }

  void write(const VerificationRecord& r) {
    if (fmt_ == Format::jsonl) *os_ << to_json(r).dump() << '\n';
    else *os_ << to_csv(r) << '\n';
    check();
  }

  void finish(const Summary& s) {
    if (fmt_ == Format::jsonl) *os_ << to_json(s).dump() << '\n';
    os_->flush();
    check();
    if (file_) {
      file_->close();
      if (file_->fail()) throw ReportError("error closing report '" + path_ + "'");
    }
  }

 private:
  void check() {
    if (!*os_) throw ReportError("write error on report '" + path_ + "'");
  }

  std::string path_;
  Format fmt_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

/// Runs verify and writes the report in one go.
inline Summary emit_report(const InstanceFamily& fam, const VerifyOptions& opt, const std::string& path, Format fmt) {
  ReportWriter w(path, fmt);
  Summary s = verify(fam, opt, [&](const VerificationRecord& r) { w.write(r); });
  w.finish(s);
  return s;
}

}  // namespace condbound::harness

#endif  // CONDBOUND_HARNESS_REPORT_HPP

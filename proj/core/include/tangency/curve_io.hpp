#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tangency/arrangement.hpp"
#include "tangency/charging.hpp"

namespace tangency {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curve file, version 1:
//   {"version": 1, "curves": [{"id": 0, "class": "S1" | "S2" | null,
//     "kind": "open" | "biinfinite" | "closed", "vertices": [["p/q", "p/q"], ...],
//     "left_ray_slope": "p/q", "right_ray_slope": "p/q",   (biinfinite)
//     "orientation": "cw" | "ccw"}]}                        (closed, optional)
// Curve ids must be 0, 1, 2, ... in file order.
std::string curves_to_json(const std::vector<CurveRecord>& curves);
std::vector<CurveRecord> curves_from_json(const std::string& text);

struct ArrangementStats {
  std::size_t n = 0;
  Rational t_eff;
  std::size_t touchings = 0;
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  std::size_t x_cross = 0;
  std::size_t x_unclassed = 0;
};
ArrangementStats stats_of(const Arrangement& arr);

// Report file, version 1: {"version": 1, "command", "scheme", "alpha",
// "stats": {...}, "audits": [rows], "summary": {"total_weights",
// "formula_bounds", "notices"}}. Exact row values are "p/q" strings,
// numeric ones JSON numbers.
struct ReportFile {
  std::string command;
  std::string scheme;
  std::string alpha;
  ArrangementStats stats;
  AuditReport report;
};
std::string report_to_json(const ReportFile& report);
ReportFile report_from_json(const std::string& text);

// One line per audit row: audit_kind,vertex_id,level,relation,computed,bound,status,note
std::string report_to_csv(const AuditReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tangency

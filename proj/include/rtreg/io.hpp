#pragma once

#include "rtreg/conditions.hpp"
#include "rtreg/experiments.hpp"
#include "rtreg/ols.hpp"
#include "rtreg/summary.hpp"
#include "rtreg/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rtreg {

// Shortest round-trip decimal representation. NaN maps to the empty string
// (blank CSV cell), infinities to "inf"/"-inf"; parse_double inverts all of
// these exactly.
std::string format_double(double x);
double parse_double(const std::string& text);

// Dataset CSV: header x1,...,xp,y, LF line endings, '.' decimal separator.
// Column x1 must be identically 1.
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
void write_dataset_file(const std::string& path, const Dataset& data);
Dataset read_dataset_file(const std::string& path);

enum class TableFormat { csv, json };

// One row per parameter, beta1..betap then sigma, with the default
// 2.5/50/97.5 percent quantiles.
struct FitReportRow {
  std::string param;
  double mean = 0.0;
  double sd = 0.0;
  double ess = 0.0;
  double mcse_mean = 0.0;
  double mcse_sd = 0.0;
  double q025 = 0.0;
  double q500 = 0.0;
  double q975 = 0.0;
};

std::vector<FitReportRow> fit_report_rows(const Summary& summary, Index p);

struct CheckReport {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t n_outliers = 0;
  int gamma = 1;
  bool proper = false;
  bool limiting_proper = false;
  bool rejection_holds = false;
  std::int64_t max_outliers = 0;
  double breakdown_fraction = 0.0;
};

CheckReport run_checks(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof);

struct OlsReportRow {
  std::string param;
  double estimate = 0.0;
  double sd = 0.0;  // NaN when n <= p + 2
};

std::vector<OlsReportRow> ols_report_rows(const OlsFit& fit);

// Every emitter/parser pair round-trips exactly: parse(emit(x)) == x with
// NaN compared as identity. CSV output starts with the comment line
// "# robust-t v<version> seed=<seed>"; JSON output is an array of records
// with the same column names (no comment). Infinite gamma is serialized as
// "inf" in both formats; NaN cells are blank in CSV and null in JSON.
void emit_sweep(std::ostream& out, const SweepResult& result, TableFormat format, std::uint64_t seed);
SweepResult parse_sweep(std::istream& in, TableFormat format);

void emit_table1(std::ostream& out, const Table1Result& result, TableFormat format, std::uint64_t seed);
Table1Result parse_table1(std::istream& in, TableFormat format);

void emit_curve(std::ostream& out, const std::vector<CurvePoint>& points, TableFormat format,
                std::uint64_t seed);
std::vector<CurvePoint> parse_curve(std::istream& in, TableFormat format);

void emit_fit_report(std::ostream& out, const std::vector<FitReportRow>& rows, TableFormat format,
                     std::uint64_t seed);
std::vector<FitReportRow> parse_fit_report(std::istream& in, TableFormat format);

void emit_check_report(std::ostream& out, const CheckReport& report, TableFormat format, std::uint64_t seed);
CheckReport parse_check_report(std::istream& in, TableFormat format);

void emit_ols_report(std::ostream& out, const std::vector<OlsReportRow>& rows, TableFormat format,
                     std::uint64_t seed);
std::vector<OlsReportRow> parse_ols_report(std::istream& in, TableFormat format);

}  // namespace rtreg

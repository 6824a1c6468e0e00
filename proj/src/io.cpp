#include "rtreg/io.hpp"

#include "rtreg/version.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace rtreg {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line: " + line);
  fields.push_back(std::move(cur));
  return fields;
}

// Next non-comment, non-blank line; false at end of stream.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

void write_comment(std::ostream& out, std::uint64_t seed) {
  out << "# robust-t v" << kVersion << " seed=" << seed << "\n";
}

void require_header(std::istream& in, const std::string& expected) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("missing header line; expected '" + expected + "'");
  if (line != expected)
    throw std::invalid_argument("unexpected header '" + line + "'; expected '" + expected + "'");
}

std::vector<std::string> require_fields(const std::string& line, std::size_t count) {
  std::vector<std::string> fields = split_csv_line(line);
  if (fields.size() != count)
    throw std::invalid_argument("expected " + std::to_string(count) + " fields, got " +
                                std::to_string(fields.size()) + " in line: " + line);
  return fields;
}

std::int64_t parse_int(const std::string& text) {
  std::int64_t v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) throw std::invalid_argument("cannot parse integer '" + text + "'");
  return v;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument("cannot parse boolean '" + text + "'");
}

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

double number_from(const json& value) { return value.is_null() ? kNan : value.get<double>(); }

json gamma_to_json(double gamma) { return std::isinf(gamma) ? json("inf") : json(gamma); }

double gamma_from_json(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("unexpected gamma value '" + value.get<std::string>() + "'");
  }
  return value.get<double>();
}

json parse_json_array(std::istream& in) {
  json j = json::parse(in);
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of records");
  return j;
}

const std::string kSweepHeader = "gamma,y_n,posterior_mean_beta2,mcse,error";
const std::string kTable1Header =
    "gamma,limiting_mean,limiting_sd,limiting_mcse_mean,limiting_mcse_sd,"
    "reduced_mean,reduced_sd,reduced_mcse_mean,reduced_mcse_sd,error";
const std::string kCurveHeader = "gamma,value";
const std::string kFitHeader = "param,mean,sd,ess,mcse_mean,mcse_sd,q2.5,q50,q97.5";
const std::string kCheckHeader =
    "n,p,n_outliers,gamma,proper,limiting_proper,rejection_holds,max_outliers,breakdown_fraction";
const std::string kOlsHeader = "param,estimate,sd";

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, p);
}

double parse_double(const std::string& text) {
  if (text.empty()) return kNan;
  double v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) throw std::invalid_argument("cannot parse real value '" + text + "'");
  return v;
}

void write_dataset(std::ostream& out, const Dataset& data) {
  validate_dataset(data);
  for (Index j = 0; j < data.p(); ++j) out << "x" << (j + 1) << ",";
  out << "y\n";
  for (Index i = 0; i < data.n(); ++i) {
    for (Index j = 0; j < data.p(); ++j) out << format_double(data.design(i, j)) << ",";
    out << format_double(data.response(i)) << "\n";
  }
}

Dataset read_dataset(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("dataset file is empty");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "y")
    throw std::invalid_argument("dataset header must be x1,...,xp,y");
  const Index p = static_cast<Index>(header.size()) - 1;
  for (Index j = 0; j < p; ++j)
    if (header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1))
      throw std::invalid_argument("dataset header must be x1,...,xp,y");

  std::vector<std::vector<double>> rows;
  while (next_line(in, line)) {
    const std::vector<std::string> fields = require_fields(line, static_cast<std::size_t>(p) + 1);
    std::vector<double> row(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) row[k] = parse_double(fields[k]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("dataset has no data rows");

  Matrix design(static_cast<Index>(rows.size()), p);
  Vector response(static_cast<Index>(rows.size()));
  for (Index i = 0; i < design.rows(); ++i) {
    for (Index j = 0; j < p; ++j) design(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    response(i) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
  }
  return make_dataset(std::move(design), std::move(response));
}

void write_dataset_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write_dataset(out, data);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_dataset(in);
}

std::vector<FitReportRow> fit_report_rows(const Summary& summary, Index p) {
  if (summary.mean.size() != p + 1)
    throw std::invalid_argument("summary covers " + std::to_string(summary.mean.size()) +
                                " parameters, expected p + 1 = " + std::to_string(p + 1));
  const Vector& q025 = summary.quantiles.at(0.025);
  const Vector& q500 = summary.quantiles.at(0.5);
  const Vector& q975 = summary.quantiles.at(0.975);
  std::vector<FitReportRow> rows;
  rows.reserve(static_cast<std::size_t>(p) + 1);
  for (Index j = 0; j <= p; ++j) {
    FitReportRow row;
    row.param = j < p ? "beta" + std::to_string(j + 1) : "sigma";
    row.mean = summary.mean(j);
    row.sd = summary.sd(j);
    row.ess = summary.ess(j);
    row.mcse_mean = summary.mcse_mean(j);
    row.mcse_sd = summary.mcse_sd(j);
    row.q025 = q025(j);
    row.q500 = q500(j);
    row.q975 = q975(j);
    rows.push_back(std::move(row));
  }
  return rows;
}

CheckReport run_checks(std::int64_t n, std::int64_t p, std::int64_t n_outliers, Dof dof) {
  const RejectionCheck rejection = check_rejection_condition(n, p, n_outliers, dof);
  CheckReport report;
  report.n = n;
  report.p = p;
  report.n_outliers = n_outliers;
  report.gamma = dof.gamma;
  report.proper = check_properness(n, p);
  report.limiting_proper = check_limiting_properness(n, p, n_outliers, dof);
  report.rejection_holds = rejection.holds;
  report.max_outliers = rejection.max_outliers;
  report.breakdown_fraction = rejection.breakdown_fraction;
  return report;
}

std::vector<OlsReportRow> ols_report_rows(const OlsFit& fit) {
  std::vector<OlsReportRow> rows;
  rows.reserve(static_cast<std::size_t>(fit.beta_hat.size()));
  for (Index j = 0; j < fit.beta_hat.size(); ++j) {
    OlsReportRow row;
    row.param = "beta" + std::to_string(j + 1);
    row.estimate = fit.beta_hat(j);
    row.sd = fit.has_posterior_cov ? std::sqrt(fit.posterior_cov(j, j)) : kNan;
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_sweep(std::ostream& out, const SweepResult& result, TableFormat format, std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kSweepHeader << "\n";
    for (const SweepRow& row : result.rows)
      out << format_double(row.gamma) << "," << format_double(row.y_n) << ","
          << format_double(row.posterior_mean_beta2) << "," << format_double(row.mcse) << ","
          << csv_escape(row.error) << "\n";
    return;
  }
  json arr = json::array();
  for (const SweepRow& row : result.rows)
    arr.push_back({{"gamma", gamma_to_json(row.gamma)},
                   {"y_n", row.y_n},
                   {"posterior_mean_beta2", number_or_null(row.posterior_mean_beta2)},
                   {"mcse", number_or_null(row.mcse)},
                   {"error", row.error}});
  out << arr.dump(2) << "\n";
}

SweepResult parse_sweep(std::istream& in, TableFormat format) {
  SweepResult result;
  if (format == TableFormat::csv) {
    require_header(in, kSweepHeader);
    std::string line;
    while (next_line(in, line)) {
      const std::vector<std::string> f = require_fields(line, 5);
      SweepRow row;
      row.gamma = parse_double(f[0]);
      row.y_n = parse_double(f[1]);
      row.posterior_mean_beta2 = parse_double(f[2]);
      row.mcse = parse_double(f[3]);
      row.error = f[4];
      result.rows.push_back(std::move(row));
    }
    return result;
  }
  for (const json& rec : parse_json_array(in)) {
    SweepRow row;
    row.gamma = gamma_from_json(rec.at("gamma"));
    row.y_n = rec.at("y_n").get<double>();
    row.posterior_mean_beta2 = number_from(rec.at("posterior_mean_beta2"));
    row.mcse = number_from(rec.at("mcse"));
    row.error = rec.at("error").get<std::string>();
    result.rows.push_back(std::move(row));
  }
  return result;
}

void emit_table1(std::ostream& out, const Table1Result& result, TableFormat format, std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kTable1Header << "\n";
    for (const Table1Row& row : result.rows)
      out << format_double(row.gamma) << "," << format_double(row.limiting_mean) << ","
          << format_double(row.limiting_sd) << "," << format_double(row.limiting_mcse_mean) << ","
          << format_double(row.limiting_mcse_sd) << "," << format_double(row.reduced_mean) << ","
          << format_double(row.reduced_sd) << "," << format_double(row.reduced_mcse_mean) << ","
          << format_double(row.reduced_mcse_sd) << "," << csv_escape(row.error) << "\n";
    return;
  }
  json arr = json::array();
  for (const Table1Row& row : result.rows)
    arr.push_back({{"gamma", gamma_to_json(row.gamma)},
                   {"limiting_mean", number_or_null(row.limiting_mean)},
                   {"limiting_sd", number_or_null(row.limiting_sd)},
                   {"limiting_mcse_mean", number_or_null(row.limiting_mcse_mean)},
                   {"limiting_mcse_sd", number_or_null(row.limiting_mcse_sd)},
                   {"reduced_mean", number_or_null(row.reduced_mean)},
                   {"reduced_sd", number_or_null(row.reduced_sd)},
                   {"reduced_mcse_mean", number_or_null(row.reduced_mcse_mean)},
                   {"reduced_mcse_sd", number_or_null(row.reduced_mcse_sd)},
                   {"error", row.error}});
  out << arr.dump(2) << "\n";
}

Table1Result parse_table1(std::istream& in, TableFormat format) {
  Table1Result result;
  if (format == TableFormat::csv) {
    require_header(in, kTable1Header);
    std::string line;
    while (next_line(in, line)) {
      const std::vector<std::string> f = require_fields(line, 10);
      Table1Row row;
      row.gamma = parse_double(f[0]);
      row.limiting_mean = parse_double(f[1]);
      row.limiting_sd = parse_double(f[2]);
      row.limiting_mcse_mean = parse_double(f[3]);
      row.limiting_mcse_sd = parse_double(f[4]);
      row.reduced_mean = parse_double(f[5]);
      row.reduced_sd = parse_double(f[6]);
      row.reduced_mcse_mean = parse_double(f[7]);
      row.reduced_mcse_sd = parse_double(f[8]);
      row.error = f[9];
      result.rows.push_back(std::move(row));
    }
    return result;
  }
  for (const json& rec : parse_json_array(in)) {
    Table1Row row;
    row.gamma = gamma_from_json(rec.at("gamma"));
    row.limiting_mean = number_from(rec.at("limiting_mean"));
    row.limiting_sd = number_from(rec.at("limiting_sd"));
    row.limiting_mcse_mean = number_from(rec.at("limiting_mcse_mean"));
    row.limiting_mcse_sd = number_from(rec.at("limiting_mcse_sd"));
    row.reduced_mean = number_from(rec.at("reduced_mean"));
    row.reduced_sd = number_from(rec.at("reduced_sd"));
    row.reduced_mcse_mean = number_from(rec.at("reduced_mcse_mean"));
    row.reduced_mcse_sd = number_from(rec.at("reduced_mcse_sd"));
    row.error = rec.at("error").get<std::string>();
    result.rows.push_back(std::move(row));
  }
  return result;
}

void emit_curve(std::ostream& out, const std::vector<CurvePoint>& points, TableFormat format,
                std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kCurveHeader << "\n";
    for (const CurvePoint& point : points)
      out << point.gamma << "," << format_double(point.value) << "\n";
    return;
  }
  json arr = json::array();
  for (const CurvePoint& point : points) arr.push_back({{"gamma", point.gamma}, {"value", point.value}});
  out << arr.dump(2) << "\n";
}

std::vector<CurvePoint> parse_curve(std::istream& in, TableFormat format) {
  std::vector<CurvePoint> points;
  if (format == TableFormat::csv) {
    require_header(in, kCurveHeader);
    std::string line;
    while (next_line(in, line)) {
      const std::vector<std::string> f = require_fields(line, 2);
      points.push_back({static_cast<int>(parse_int(f[0])), parse_double(f[1])});
    }
    return points;
  }
  for (const json& rec : parse_json_array(in))
    points.push_back({rec.at("gamma").get<int>(), rec.at("value").get<double>()});
  return points;
}

void emit_fit_report(std::ostream& out, const std::vector<FitReportRow>& rows, TableFormat format,
                     std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kFitHeader << "\n";
    for (const FitReportRow& row : rows)
      out << csv_escape(row.param) << "," << format_double(row.mean) << "," << format_double(row.sd) << ","
          << format_double(row.ess) << "," << format_double(row.mcse_mean) << ","
          << format_double(row.mcse_sd) << "," << format_double(row.q025) << ","
          << format_double(row.q500) << "," << format_double(row.q975) << "\n";
    return;
  }
  json arr = json::array();
  for (const FitReportRow& row : rows)
    arr.push_back({{"param", row.param},
                   {"mean", row.mean},
                   {"sd", row.sd},
                   {"ess", row.ess},
                   {"mcse_mean", row.mcse_mean},
                   {"mcse_sd", row.mcse_sd},
                   {"q2.5", row.q025},
                   {"q50", row.q500},
                   {"q97.5", row.q975}});
  out << arr.dump(2) << "\n";
}

std::vector<FitReportRow> parse_fit_report(std::istream& in, TableFormat format) {
  std::vector<FitReportRow> rows;
  if (format == TableFormat::csv) {
    require_header(in, kFitHeader);
    std::string line;
    while (next_line(in, line)) {
      const std::vector<std::string> f = require_fields(line, 9);
      FitReportRow row;
      row.param = f[0];
      row.mean = parse_double(f[1]);
      row.sd = parse_double(f[2]);
      row.ess = parse_double(f[3]);
      row.mcse_mean = parse_double(f[4]);
      row.mcse_sd = parse_double(f[5]);
      row.q025 = parse_double(f[6]);
      row.q500 = parse_double(f[7]);
      row.q975 = parse_double(f[8]);
      rows.push_back(std::move(row));
    }
    return rows;
  }
  for (const json& rec : parse_json_array(in)) {
    FitReportRow row;
    row.param = rec.at("param").get<std::string>();
    row.mean = rec.at("mean").get<double>();
    row.sd = rec.at("sd").get<double>();
    row.ess = rec.at("ess").get<double>();
    row.mcse_mean = rec.at("mcse_mean").get<double>();
    row.mcse_sd = rec.at("mcse_sd").get<double>();
    row.q025 = rec.at("q2.5").get<double>();
    row.q500 = rec.at("q50").get<double>();
    row.q975 = rec.at("q97.5").get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_check_report(std::ostream& out, const CheckReport& report, TableFormat format, std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kCheckHeader << "\n";
    out << report.n << "," << report.p << "," << report.n_outliers << "," << report.gamma << ","
        << format_bool(report.proper) << "," << format_bool(report.limiting_proper) << ","
        << format_bool(report.rejection_holds) << "," << report.max_outliers << ","
        << format_double(report.breakdown_fraction) << "\n";
    return;
  }
  json arr = json::array();
  arr.push_back({{"n", report.n},
                 {"p", report.p},
                 {"n_outliers", report.n_outliers},
                 {"gamma", report.gamma},
                 {"proper", report.proper},
                 {"limiting_proper", report.limiting_proper},
                 {"rejection_holds", report.rejection_holds},
                 {"max_outliers", report.max_outliers},
                 {"breakdown_fraction", report.breakdown_fraction}});
  out << arr.dump(2) << "\n";
}

CheckReport parse_check_report(std::istream& in, TableFormat format) {
  CheckReport report;
  if (format == TableFormat::csv) {
    require_header(in, kCheckHeader);
    std::string line;
    if (!next_line(in, line)) throw std::invalid_argument("check report has no data row");
    const std::vector<std::string> f = require_fields(line, 9);
    report.n = parse_int(f[0]);
    report.p = parse_int(f[1]);
    report.n_outliers = parse_int(f[2]);
    report.gamma = static_cast<int>(parse_int(f[3]));
    report.proper = parse_bool(f[4]);
    report.limiting_proper = parse_bool(f[5]);
    report.rejection_holds = parse_bool(f[6]);
    report.max_outliers = parse_int(f[7]);
    report.breakdown_fraction = parse_double(f[8]);
    return report;
  }
  const json arr = parse_json_array(in);
  if (arr.size() != 1) throw std::invalid_argument("check report must hold exactly one record");
  const json& rec = arr.at(0);
  report.n = rec.at("n").get<std::int64_t>();
  report.p = rec.at("p").get<std::int64_t>();
  report.n_outliers = rec.at("n_outliers").get<std::int64_t>();
  report.gamma = rec.at("gamma").get<int>();
  report.proper = rec.at("proper").get<bool>();
  report.limiting_proper = rec.at("limiting_proper").get<bool>();
  report.rejection_holds = rec.at("rejection_holds").get<bool>();
  report.max_outliers = rec.at("max_outliers").get<std::int64_t>();
  report.breakdown_fraction = rec.at("breakdown_fraction").get<double>();
  return report;
}

void emit_ols_report(std::ostream& out, const std::vector<OlsReportRow>& rows, TableFormat format,
                     std::uint64_t seed) {
  if (format == TableFormat::csv) {
    write_comment(out, seed);
    out << kOlsHeader << "\n";
    for (const OlsReportRow& row : rows)
      out << csv_escape(row.param) << "," << format_double(row.estimate) << "," << format_double(row.sd)
          << "\n";
    return;
  }
  json arr = json::array();
  for (const OlsReportRow& row : rows)
    arr.push_back({{"param", row.param}, {"estimate", row.estimate}, {"sd", number_or_null(row.sd)}});
  out << arr.dump(2) << "\n";
}

std::vector<OlsReportRow> parse_ols_report(std::istream& in, TableFormat format) {
  std::vector<OlsReportRow> rows;
  if (format == TableFormat::csv) {
    require_header(in, kOlsHeader);
    std::string line;
    while (next_line(in, line)) {
      const std::vector<std::string> f = require_fields(line, 3);
      rows.push_back({f[0], parse_double(f[1]), parse_double(f[2])});
    }
    return rows;
  }
  for (const json& rec : parse_json_array(in))
    rows.push_back({rec.at("param").get<std::string>(), rec.at("estimate").get<double>(),
                    number_from(rec.at("sd"))});
  return rows;
}

}  // namespace rtreg

#include "cfgbounds/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "cfgbounds/error.hpp"
#include "json.hpp"

namespace cfgbounds::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad field '") + key + "': " + e.what());
  }
}

json piecewise_payload(const PiecewiseConstant& f) {
  return json{{"lo", f.lo()}, {"hi", f.hi()}, {"breaks", f.breaks()}, {"values", f.values()}};
}

PiecewiseConstant piecewise_from(const json& j) {
  auto breaks = field<std::vector<double>>(j, "breaks");
  auto values = field<std::vector<double>>(j, "values");
  const auto lo = field<double>(j, "lo");
  const auto hi = field<double>(j, "hi");
  if (breaks.size() < 2 || breaks.front() != lo || breaks.back() != hi) {
    throw IoError("piecewise: breaks must start at lo and end at hi");
  }
  return PiecewiseConstant(std::move(breaks), std::move(values));
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

std::string piecewise_to_json(const PiecewiseConstant& f) { return dump(piecewise_payload(f)); }

PiecewiseConstant piecewise_from_json(const std::string& text) { return piecewise_from(parse(text)); }

std::string fit_to_json(const dpfit::FitResult& fit) {
  json j = piecewise_payload(fit.approximant);
  j["error"] = fit.error;
  j["splits"] = fit.splits;
  return dump(j);
}

std::string program_to_json(const solver::IntegerProgram& ip) {
  json rows = json::array();
  for (const auto& r : ip.rows) rows.push_back(json{{"idx", r.idx}, {"coef", r.coef}, {"b", r.b}});
  return dump(json{{"n", ip.n}, {"m", ip.m()}, {"c", ip.c}, {"rows", rows}, {"binary", ip.binary}});
}

solver::IntegerProgram program_from_json(const std::string& text) {
  const json j = parse(text);
  solver::IntegerProgram ip;
  ip.n = field<int>(j, "n");
  ip.c = field<std::vector<double>>(j, "c");
  ip.binary = field<std::vector<int>>(j, "binary");
  const json rows = field<json>(j, "rows");
  if (!rows.is_array()) throw IoError("program: rows must be an array");
  for (const auto& r : rows) {
    ip.rows.push_back({field<std::vector<int>>(r, "idx"), field<std::vector<double>>(r, "coef"),
                       field<double>(r, "b")});
  }
  if (field<std::size_t>(j, "m") != ip.rows.size()) throw IoError("program: m disagrees with rows");
  ip.validate();
  return ip;
}

std::string dual_to_json(const configspace::DualExtraction& d) {
  json j = piecewise_payload(d.dual);
  j["instance"] = d.instance;
  j["kappa"] = d.kappa;
  j["grid_eps"] = d.grid_eps;
  j["rules"] = d.rules.label();
  j["node_policy"] = solver::policy_name(d.node_policy);
  j["n_vars"] = d.n_vars;
  j["evaluations"] = d.evaluations;
  return dump(j);
}

configspace::DualExtraction dual_from_json(const std::string& text) {
  const json j = parse(text);
  configspace::DualExtraction d;
  d.dual = piecewise_from(j);
  d.instance = field<std::string>(j, "instance");
  d.kappa = field<std::int64_t>(j, "kappa");
  d.grid_eps = field<double>(j, "grid_eps");
  d.rules = configspace::RulePair::parse(field<std::string>(j, "rules"));
  if (j.contains("node_policy")) d.node_policy = solver::parse_policy(field<std::string>(j, "node_policy"));
  d.n_vars = j.contains("n_vars") ? field<int>(j, "n_vars") : 0;
  d.evaluations = j.contains("evaluations") ? field<std::size_t>(j, "evaluations") : 0;
  return d;
}

std::string format_double(double v) { return fmt::format("{}", v); }

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError("CSV header must be '" + header + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

template <typename T>
T cell(const std::string& s) {
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_same_v<T, double>) {
      v = std::stod(s, &used);
    } else if constexpr (std::is_same_v<T, int>) {
      v = std::stoi(s, &used);
    } else {
      v = std::stoull(s, &used);
    }
    if (used != s.size()) throw IoError("trailing characters in CSV cell '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("bad CSV cell '" + s + "'");
  }
}

constexpr const char* kProfileHeader = "j,e_hat";
constexpr const char* kCurveHeader = "N,worst_case,srm,srm_best_j,baseline";

}  // namespace

std::string profile_to_csv(const bounds::ApproxProfile& profile) {
  std::string out = std::string(kProfileHeader) + "\n";
  for (int j = profile.j_lo; j <= profile.j_hi(); ++j) {
    out += fmt::format("{},{}\n", j, profile.at(j));
  }
  return out;
}

bounds::ApproxProfile profile_from_csv(const std::string& text) {
  bounds::ApproxProfile p;
  const auto rows = csv_rows(text, kProfileHeader);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != 2) throw IoError("profile CSV: expected 2 columns");
    const int j = cell<int>(rows[k][0]);
    if (k == 0) p.j_lo = j;
    if (j != p.j_lo + static_cast<int>(k)) throw IoError("profile CSV: j must be consecutive");
    p.e_hat.push_back(cell<double>(rows[k][1]));
  }
  return p;
}

std::string curve_to_csv(const bounds::BoundCurve& curve) {
  std::string out = std::string(kCurveHeader) + "\n";
  for (const auto& r : curve.rows) {
    out += fmt::format("{},{},{},{},{}\n", r.n, r.worst_case, r.srm, r.srm_best_j, r.baseline);
  }
  return out;
}

bounds::BoundCurve curve_from_csv(const std::string& text) {
  bounds::BoundCurve curve;
  for (const auto& row : csv_rows(text, kCurveHeader)) {
    if (row.size() != 5) throw IoError("bounds CSV: expected 5 columns");
    bounds::BoundRow r;
    r.n = cell<unsigned long long>(row[0]);
    r.worst_case = cell<double>(row[1]);
    r.srm = cell<double>(row[2]);
    r.srm_best_j = cell<int>(row[3]);
    r.baseline = cell<double>(row[4]);
    curve.rows.push_back(r);
  }
  return curve;
}

std::string reported_to_csv(const bounds::BoundCurve& curve) {
  std::string out = "N,reported\n";
  for (const auto& r : curve.rows) out += fmt::format("{},{}\n", r.n, r.reported());
  return out;
}

}  // namespace cfgbounds::io

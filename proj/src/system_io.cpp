#include "qpd/system_io.hpp"

#include "qpd/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qpd::io {

namespace {

[[noreturn]] void schema(const std::string& detail) { throw Error(ErrorCode::SchemaError, detail); }

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) schema(where + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> number_matrix(const Json& j, const std::string& key, std::size_t n) {
  if (!j.is_array()) schema("\"" + key + "\" must be a nested array");
  if (j.size() != n) schema("\"" + key + "\" must have n rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto row = number_array(j[i], "\"" + key + "\" row " + std::to_string(i));
    if (row.size() != n) schema("\"" + key + "\" row " + std::to_string(i) + " must have n entries");
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& require_key(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

QPSystem parse_system(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << e.what();
    throw Error(ErrorCode::ParseError, os.str());
  }

  if (!j.is_object()) schema("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "n" && key != "A" && key != "B" && key != "lambda")
      schema("unknown key \"" + key + "\"");
  }

  RawSystem raw;
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) schema("\"name\" must be a string");
    raw.name = it->get<std::string>();
  }
  const Json& n_json = require_key(j, "n");
  if (!n_json.is_number_integer() || n_json.get<long long>() < 1) schema("\"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(n_json.get<long long>());
  raw.A = number_matrix(require_key(j, "A"), "A", n);
  raw.B = number_matrix(require_key(j, "B"), "B", n);
  raw.lambda = number_array(require_key(j, "lambda"), "\"lambda\"");
  if (raw.lambda.size() != n) schema("\"lambda\" must have n entries");
  return validate_system(raw);
}

QPSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  schema("expected a number");
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_to_json(v(i)));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Json system_to_json(const QPSystem& sys) {
  Json j;
  j["name"] = sys.name();
  j["n"] = sys.n();
  j["A"] = matrix_to_json(sys.A());
  j["B"] = matrix_to_json(sys.B());
  j["lambda"] = vector_to_json(sys.lambda());
  return j;
}

Json verdict_to_json(const TheoremVerdict& v) {
  Json j;
  j["theorem"] = std::string(to_string(v.theorem));
  j["applicable"] = v.applicable;
  j["conclusion"] = Json::array();
  for (auto c : v.conclusions) j["conclusion"].push_back(std::string(to_string(c)));
  j["hypotheses"] = Json::array();
  for (const auto& h : v.hypotheses) {
    Json hj;
    hj["hypothesis"] = h.label;
    hj["pass"] = h.pass;
    hj["witness"] = Json::array();
    for (double w : h.witness) hj["witness"].push_back(number_to_json(w));
    hj["near_boundary"] = h.near_boundary;
    hj["note"] = h.note;
    j["hypotheses"].push_back(std::move(hj));
  }
  j["notes"] = v.notes;
  return j;
}

TheoremVerdict verdict_from_json(const Json& j) {
  try {
    TheoremVerdict v;
    const auto id = theorem_from_string(j.at("theorem").get<std::string>());
    if (!id) schema("unknown theorem id");
    v.theorem = *id;
    v.applicable = j.at("applicable").get<bool>();
    for (const auto& c : j.at("conclusion")) {
      const auto conclusion = conclusion_from_string(c.get<std::string>());
      if (!conclusion) schema("unknown conclusion");
      v.conclusions.push_back(*conclusion);
    }
    for (const auto& hj : j.at("hypotheses")) {
      HypothesisCheck h;
      h.label = hj.at("hypothesis").get<std::string>();
      h.pass = hj.at("pass").get<bool>();
      for (const auto& w : hj.at("witness")) h.witness.push_back(number_from_json(w));
      h.near_boundary = hj.at("near_boundary").get<bool>();
      h.note = hj.at("note").get<std::string>();
      v.hypotheses.push_back(std::move(h));
    }
    if (const auto it = j.find("notes"); it != j.end()) v.notes = it->get<std::vector<std::string>>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("verdict: ") + e.what());
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  out << '\n';
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    out << t;
    for (std::size_t i = 0; i < n; ++i) out << ',' << format_double(traj.states[t][i]);
    out << '\n';
  }
}

void write_scan_csv(std::ostream& out, const chaos::ScanResult& scan) {
  out << "rho,detected,detail\n";
  for (const auto& p : scan.grid)
    out << format_double(p.rho) << ',' << (p.detected ? 1 : 0) << ",\"" << p.detail << "\"\n";
}

Json scan_summary(const chaos::ScanResult& scan) {
  Json j;
  j["kind"] = chaos::to_string(scan.kind);
  j["grid_points"] = scan.grid.size();
  if (scan.threshold) {
    j["detected"] = true;
    j["threshold"] = *scan.threshold;
    j["resolution"] = scan.resolution;
  } else {
    j["detected"] = false;
    j["threshold"] = nullptr;
    j["resolution"] = nullptr;
    j["status"] = "no detection";
  }
  j["reference"] = scan.reference;
  return j;
}

}  // namespace qpd::io

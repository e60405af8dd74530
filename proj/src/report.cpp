#include "ewh/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ewh/errors.hpp"

namespace ewh {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// Finite doubles are emitted with 17 significant digits. The dump cannot
// format floats that way, so they travel as marked strings and are unquoted
// afterwards.
constexpr char kNumberMark = '\x01';

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%c%.17g", kNumberMark, v);
  return std::string(buf);
}

std::string unmark_numbers(const std::string& dumped) {
  static const std::string open = "\"\\u0001";
  std::string out;
  out.reserve(dumped.size());
  std::size_t pos = 0;
  for (std::size_t at; (at = dumped.find(open, pos)) != std::string::npos;) {
    const std::size_t close = dumped.find('"', at + open.size());
    out.append(dumped, pos, at - pos);
    out.append(dumped, at + open.size(), close - at - open.size());
    pos = close + 1;
  }
  out.append(dumped, pos);
  return out;
}

nlohmann::ordered_json axis_json(const AxisSpec& a) {
  nlohmann::ordered_json j;
  j["min"] = number(a.min);
  j["max"] = number(a.max);
  j["count"] = a.count;
  return j;
}

}  // namespace

std::vector<double> AxisSpec::samples() const {
  if (count == 1) return {min};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = min + (max - min) * i / (count - 1);
  return out;
}

AxisSpec AxisSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  AxisSpec a;
  if (parts.size() == 1) {
    a.min = a.max = parse_number(parts[0]);
    a.count = 1;
  } else if (parts.size() == 2 || parts.size() == 3) {
    a.min = parse_number(parts[0]);
    a.max = parse_number(parts[1]);
    if (parts.size() == 3) {
      const double n = parse_number(parts[2]);
      if (n != std::floor(n) || n < 2) throw UsageError("grid count must be an integer >= 2");
      a.count = static_cast<int>(n);
    }
    if (!(a.min < a.max)) throw UsageError("grid range needs min < max");
  } else {
    throw UsageError("bad axis '" + text + "' (expected min:max[:count])");
  }
  return a;
}

std::vector<Point> GridSpec::points() const {
  std::vector<Point> out;
  for (double n : nu.samples())
    for (double rr : r.samples())
      for (double xx : x.samples()) out.push_back({n, rr, xx});
  return out;
}

void GridSpec::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw UsageError("bad grid '" + assignment + "' (expected axis=min:max:count)");
  const std::string name = assignment.substr(0, eq);
  const AxisSpec a = AxisSpec::parse(assignment.substr(eq + 1));
  if (name == "nu") {
    nu = a;
  } else if (name == "r") {
    r = a;
  } else if (name == "x") {
    x = a;
    x_given = true;
  } else {
    throw UsageError("unknown grid axis '" + name + "'");
  }
}

void ResidualReport::finalize() {
  overall = 0.0;
  for (const auto& [name, v] : components) {
    if (std::isnan(v) || std::isnan(overall)) {
      overall = std::nan("");
    } else {
      overall = std::max(overall, v);
    }
  }
  pass = overall < tolerance;
}

std::string ResidualReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["tool"] = "ewh";
  j["version"] = kToolVersion;
  j["check"] = check;
  j["anchor"] = anchor;
  nlohmann::ordered_json g;
  g["nu"] = axis_json(grid.nu);
  g["r"] = axis_json(grid.r);
  g["x"] = axis_json(grid.x);
  j["grid"] = g;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = number(v);
  j["params"] = p;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields) f[k] = v;
  j["fields"] = f;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : components) c[k] = number(v);
  j["components"] = c;
  j["overall_max"] = number(overall);
  j["tolerance"] = number(tolerance);
  j["pass"] = pass;
  j["expect_fail"] = expect_fail;
  j["notes"] = notes;
  if (wall_seconds) j["wall_seconds"] = number(*wall_seconds);
  return unmark_numbers(j.dump(2)) + "\n";
}

std::string ResidualReport::summary() const {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", overall);
  os << check << ": " << (pass ? "PASS" : "FAIL") << "  max residual " << buf;
  std::snprintf(buf, sizeof buf, "%.1e", tolerance);
  os << " (tol " << buf << ")";
  if (expect_fail) os << (succeeded() ? "  [failure expected]" : "  [expected failure did not occur]");
  os << "\n  " << anchor << "\n";
  for (const auto& [k, v] : components) {
    std::snprintf(buf, sizeof buf, "%.3e", v);
    os << "  " << k << "  " << buf << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  if (wall_seconds) {
    std::snprintf(buf, sizeof buf, "%.3f", *wall_seconds);
    os << "  wall time " << buf << " s\n";
  }
  return os.str();
}

}  // namespace ewh

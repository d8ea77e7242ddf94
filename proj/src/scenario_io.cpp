#include "pursuit/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pursuit::io {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* section, const char* field) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    throw Error::argument(std::string("section '") + section + "' needs numeric field '" +
                          field + "'");
  }
  return obj[field].get<double>();
}

std::vector<double> number_array(const json& value, const char* where) {
  if (!value.is_array()) throw Error::argument(std::string(where) + " must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number()) throw Error::argument(std::string(where) + " must hold numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error::argument(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error::argument("scenario document must be a JSON object");

  ScenarioFile file;
  if (doc.contains("pursuit")) {
    const json& p = doc["pursuit"];
    kinematics::PursuitScenario s;
    s.initial_distance = number_field(p, "pursuit", "initial_distance");
    s.pursuer_speed = number_field(p, "pursuit", "pursuer_speed");
    if (!p.contains("speeds")) throw Error::argument("section 'pursuit' needs field 'speeds'");
    s.speed_set = number_array(p["speeds"], "pursuit.speeds");
    if (p.contains("directions_deg")) {
      s.direction_set = number_array(p["directions_deg"], "pursuit.directions_deg");
    }
    file.pursuit = std::move(s);
  }
  if (doc.contains("fleet")) {
    const json& f = doc["fleet"];
    if (!f.contains("speeds")) throw Error::argument("section 'fleet' needs field 'speeds'");
    std::vector<assignment::InterceptorSpec> fleet;
    for (double v : number_array(f["speeds"], "fleet.speeds")) fleet.push_back({v});
    file.fleet = std::move(fleet);
  }
  if (doc.contains("targets")) {
    const json& ts = doc["targets"];
    if (!ts.is_array()) throw Error::argument("section 'targets' must be an array");
    std::vector<assignment::TargetSpec> targets;
    for (const auto& t : ts) {
      targets.push_back({number_field(t, "targets", "distance"),
                         number_field(t, "targets", "speed"),
                         number_field(t, "targets", "direction_deg")});
    }
    file.targets = std::move(targets);
  }
  if (doc.contains("jobs")) {
    const json& js = doc["jobs"];
    if (!js.is_array()) throw Error::argument("section 'jobs' must be an array");
    std::vector<scheduling::Job> jobs;
    for (const auto& j : js) {
      jobs.push_back({number_field(j, "jobs", "duration"), number_field(j, "jobs", "weight"),
                      number_field(j, "jobs", "due")});
    }
    file.jobs = std::move(jobs);
  }
  if (doc.contains("matrix")) {
    const json& m = doc["matrix"];
    if (!m.contains("rows") || !m["rows"].is_array() || m["rows"].empty()) {
      throw Error::argument("section 'matrix' needs a nonempty array field 'rows'");
    }
    MatrixSection section;
    section.rows = m["rows"].size();
    for (const auto& row : m["rows"]) {
      std::vector<double> values = number_array(row, "matrix.rows");
      if (section.cols == 0) section.cols = values.size();
      if (values.size() != section.cols || values.empty()) {
        throw Error::argument("section 'matrix' rows must be nonempty and rectangular");
      }
      section.entries.insert(section.entries.end(), values.begin(), values.end());
    }
    file.matrix = std::move(section);
  }
  if (doc.contains("stopping")) {
    const json& s = doc["stopping"];
    const double n = number_field(s, "stopping", "n");
    if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n))) {
      throw Error::argument("section 'stopping' field 'n' must be a positive integer");
    }
    file.stopping_n = static_cast<std::size_t>(n);
  }
  return file;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::argument("cannot read scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string input_digest(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const std::string& corner,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels,
                      const std::vector<double>& entries, std::size_t rows, std::size_t cols) {
  out << corner;
  for (const auto& label : col_labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << (i < row_labels.size() ? row_labels[i] : std::string());
    for (std::size_t j = 0; j < cols; ++j) out << ',' << format_full(entries[i * cols + j]);
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<kinematics::TrajectorySample>& samples) {
  out << "t,rho,phi,x,y\n";
  for (const auto& s : samples) {
    out << format_full(s.t) << ',' << format_full(s.rho) << ',' << format_full(s.phi) << ','
        << format_full(s.x) << ',' << format_full(s.y) << '\n';
  }
}

}  // namespace pursuit::io

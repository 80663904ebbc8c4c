#include "soliton/io.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace soliton {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, "bad number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Lines of the input with their 1-based numbers, blank lines dropped.
std::vector<std::pair<std::size_t, std::string_view>> numbered_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::string_view rest(text);
  std::size_t number = 0;
  while (!rest.empty()) {
    const std::size_t eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    ++number;
    line = trim(line);
    if (!line.empty()) lines.emplace_back(number, line);
  }
  return lines;
}

Matrix matrix_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix JSON must be an array of rows");
  const int n = static_cast<int>(j.size());
  Matrix m(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw Error("matrix JSON rows must be square");
    }
    for (int c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Vector vector_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw Error("vector JSON must be a non-empty array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.dim(); ++i) v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string to_csv(const PolygonWindow& polygon, double alpha) {
  polygon.validate();
  std::ostringstream os;
  os << "# topology=" << (polygon.topology == Topology::kCyclic ? "cyclic" : "open")
     << " alpha=" << format_double(alpha) << '\n';
  for (long j = polygon.jmin; j <= polygon.jmax(); ++j) {
    os << j;
    const Vector& v = polygon.at(j);
    for (int i = 0; i < v.dim(); ++i) os << ',' << format_double(v[i]);
    os << '\n';
  }
  return os.str();
}

PolygonCsv parse_polygon_csv(const std::string& text) {
  const auto lines = numbered_lines(text);
  if (lines.empty()) throw ParseError(1, "empty polygon CSV");
  const auto [header_line, header] = lines.front();
  if (header.substr(0, 1) != "#") {
    throw ParseError(header_line, "expected '# topology=... alpha=...' header");
  }

  PolygonCsv out;
  bool topology_seen = false;
  bool alpha_seen = false;
  for (const auto field : split(header.substr(1), ' ')) {
    const auto f = trim(field);
    if (f.empty()) continue;
    if (f.substr(0, 9) == "topology=") {
      const auto value = f.substr(9);
      if (value == "open") {
        out.polygon.topology = Topology::kOpen;
      } else if (value == "cyclic") {
        out.polygon.topology = Topology::kCyclic;
      } else {
        throw ParseError(header_line, "unknown topology '" + std::string(value) + "'");
      }
      topology_seen = true;
    } else if (f.substr(0, 6) == "alpha=") {
      out.alpha = parse_number(f.substr(6), header_line);
      alpha_seen = true;
    }
  }
  if (!topology_seen || !alpha_seen) {
    throw ParseError(header_line, "header must carry topology= and alpha=");
  }

  bool first = true;
  long expected_j = 0;
  int n = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    const auto tokens = split(line, ',');
    if (tokens.size() < 2) throw ParseError(line_no, "vertex line needs 'j,x1,...'");
    const double j_value = parse_number(tokens[0], line_no);
    const long j = static_cast<long>(j_value);
    if (static_cast<double>(j) != j_value) throw ParseError(line_no, "index must be an integer");
    if (first) {
      out.polygon.jmin = j;
      n = static_cast<int>(tokens.size()) - 1;
      first = false;
    } else if (j != expected_j) {
      throw ParseError(line_no, "vertex indices must be consecutive");
    } else if (static_cast<int>(tokens.size()) - 1 != n) {
      throw ParseError(line_no, "inconsistent vertex dimension");
    }
    expected_j = j + 1;
    Vector v(n);
    for (int c = 0; c < n; ++c) v[c] = parse_number(tokens[static_cast<std::size_t>(c) + 1], line_no);
    out.polygon.vertices.push_back(std::move(v));
  }
  if (out.polygon.vertices.empty()) throw ParseError(lines.back().first, "no vertices");
  return out;
}

std::string to_csv(const CurveSamples& samples) {
  samples.validate();
  const bool derivs = samples.has_derivs() && !samples.second_derivs.empty();
  std::ostringstream os;
  os << "# n=" << samples.dim() << " derivs=" << (derivs ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < samples.ts.size(); ++i) {
    os << format_double(samples.ts[i]);
    const auto put = [&os](const Vector& v) {
      for (int c = 0; c < v.dim(); ++c) os << ',' << format_double(v[c]);
    };
    put(samples.points[i]);
    if (derivs) {
      put(samples.first_derivs[i]);
      put(samples.second_derivs[i]);
    }
    os << '\n';
  }
  return os.str();
}

CurveSamples parse_samples_csv(const std::string& text) {
  const auto lines = numbered_lines(text);
  if (lines.empty()) throw ParseError(1, "empty samples CSV");
  const auto [header_line, header] = lines.front();
  if (header.substr(0, 1) != "#") throw ParseError(header_line, "expected '# n=... derivs=...'");
  int n = 0;
  int derivs = 0;
  for (const auto field : split(header.substr(1), ' ')) {
    const auto f = trim(field);
    if (f.substr(0, 2) == "n=") n = static_cast<int>(parse_number(f.substr(2), header_line));
    if (f.substr(0, 7) == "derivs=") {
      derivs = static_cast<int>(parse_number(f.substr(7), header_line));
    }
  }
  if (n < 1) throw ParseError(header_line, "header must carry n >= 1");
  const std::size_t expected = 1 + static_cast<std::size_t>(n) * (derivs ? 3 : 1);

  CurveSamples out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    const auto tokens = split(line, ',');
    if (tokens.size() != expected) {
      throw ParseError(line_no, "expected " + std::to_string(expected) + " columns");
    }
    std::size_t c = 0;
    out.ts.push_back(parse_number(tokens[c++], line_no));
    const auto take = [&]() {
      Vector v(n);
      for (int k = 0; k < n; ++k) v[k] = parse_number(tokens[c++], line_no);
      return v;
    };
    out.points.push_back(take());
    if (derivs) {
      out.first_derivs.push_back(take());
      out.second_derivs.push_back(take());
    }
  }
  out.validate();
  return out;
}

std::string to_json(const SolitonSpec& spec) {
  spec.validate();
  ordered_json j;
  j["B"] = matrix_to_json(spec.B);
  j["d"] = vector_to_json(spec.d);
  j["v"] = vector_to_json(spec.v);
  return j.dump(2) + "\n";
}

SolitonSpec parse_spec_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad spec JSON: ") + e.what());
  }
  SolitonSpec spec{matrix_from_json(j.at("B")), vector_from_json(j.at("d")),
                   vector_from_json(j.at("v"))};
  spec.validate();
  return spec;
}

std::string to_json(const CurvatureReport& report) {
  ordered_json j;
  j["beta"] = report.beta;
  j["tau"] = report.tau;
  j["detB"] = report.detB;
  if (report.k) j["k"] = *report.k;
  j["epsilon"] = report.epsilon;
  j["kind"] = to_string(report.kind);
  if (report.kga) j["kga"] = *report.kga;
  j["family_type"] = to_string(report.family_type);
  return j.dump(2) + "\n";
}

CurvatureReport parse_report_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad report JSON: ") + e.what());
  }
  CurvatureReport r;
  r.beta = j.at("beta").get<double>();
  r.tau = j.at("tau").get<double>();
  r.detB = j.at("detB").get<double>();
  if (j.contains("k")) r.k = j["k"].get<double>();
  r.epsilon = j.at("epsilon").get<int>();
  r.kind = curve_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("kga")) r.kga = j["kga"].get<double>();
  r.family_type = family_type_from_string(j.at("family_type").get<std::string>());
  return r;
}

}  // namespace soliton

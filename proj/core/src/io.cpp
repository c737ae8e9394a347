#include "shrinkage/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shrinkage {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

bool parse_double(const std::string& tok, double& out) {
  errno = 0;
  const char* s = tok.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  if (end == s) return false;
  // ERANGE underflow still yields the nearest subnormal (or zero), which is
  // exactly what the writer emitted; only a true overflow is malformed.
  if (errno == ERANGE && (out == HUGE_VAL || out == -HUGE_VAL)) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    out.push_back(cur);
  }
  return out;
}

struct ParsedCsv {
  std::vector<std::vector<double>> rows;
};

ParsedCsv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  ParsedCsv out;
  std::string line;
  std::size_t lineno = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto toks = split_csv_line(line);
    std::vector<double> row;
    row.reserve(toks.size());
    bool ok = true;
    for (const auto& t : toks) {
      double v;
      if (!parse_double(t, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      if (first_data) {
        first_data = false;  // header line
        continue;
      }
      fail(path, "non-numeric field at line " + std::to_string(lineno));
    }
    first_data = false;
    if (!out.rows.empty() && row.size() != out.rows.front().size())
      fail(path, "ragged row at line " + std::to_string(lineno));
    out.rows.push_back(std::move(row));
  }
  if (out.rows.empty()) fail(path, "no numeric rows");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const MatrixXd& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  if (!header.empty()) {
    if (Eigen::Index(header.size()) != m.cols())
      fail(path, "header width does not match matrix");
    for (std::size_t j = 0; j < header.size(); ++j)
      out << (j ? "," : "") << header[j];
    out << '\n';
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
  if (!out) fail(path, "write error");
}

void write_vector_csv(const std::string& path, const VectorXd& v,
                      const std::string& name) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  if (!name.empty()) out << name << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << format_double(v[i]) << '\n';
  if (!out) fail(path, "write error");
}

MatrixXd read_matrix_csv(const std::string& path) {
  auto parsed = read_csv(path);
  const auto r = parsed.rows.size();
  const auto c = parsed.rows.front().size();
  MatrixXd m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(Eigen::Index(i), Eigen::Index(j)) = parsed.rows[i][j];
  return m;
}

VectorXd read_vector_csv(const std::string& path) {
  auto parsed = read_csv(path);
  if (parsed.rows.front().size() != 1)
    fail(path, "expected a single column");
  VectorXd v(Eigen::Index(parsed.rows.size()));
  for (std::size_t i = 0; i < parsed.rows.size(); ++i)
    v[Eigen::Index(i)] = parsed.rows[i][0];
  return v;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) fail(path, "write error");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(path, std::string("json parse: ") + e.what());
  }
  return j;
}

}  // namespace shrinkage

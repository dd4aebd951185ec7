#include "sbpdiss/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sbpdiss {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_txt(const std::string& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "# " << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << format_g17(m(i, j));
    }
    out << "\n";
  }
}

Mat read_matrix_txt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  char c;
  in >> c;
  if (c != '#') throw ParseError("matrix file missing '# rows cols' header");
  Eigen::Index rows, cols;
  in >> rows >> cols;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw ParseError("matrix file truncated");
  return m;
}

void Table::add_row(const std::vector<std::string>& row) {
  if (row.size() != columns.size())
    throw DimensionMismatch("table row width mismatch");
  rows.push_back(row);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

void write_csv(const std::string& path, const Table& t,
               const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out << ",";
    out << csv_escape(t.columns[j]);
  }
  out << ",config_hash\r\n";
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << ",";
      out << csv_escape(row[j]);
    }
    out << "," << config_hash << "\r\n";
  }
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    if (header) {
      t.columns = cells;
      header = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sbpdiss

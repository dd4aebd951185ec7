#ifndef SBPDISS_IO_HPP
#define SBPDISS_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "sbpdiss/defs.hpp"

namespace sbpdiss {

/// 17 significant digits, lossless double round trip.
std::string format_g17(double v);

/// Plain-text matrix format: header line "# rows cols", then one row per
/// line, row-major, space-separated decimals.
void write_matrix_txt(const std::string& path, const Mat& m);
Mat read_matrix_txt(const std::string& path);

/// Simple column table; all cells are stored as strings, numeric cells
/// formatted with format_g17.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<std::string>& row);
  static std::string num(double v) { return format_g17(v); }
};

/// RFC-4180 CSV with a header row. A config_hash column is appended so the
/// output embeds its provenance.
void write_csv(const std::string& path, const Table& t,
               const std::string& config_hash);
Table read_csv(const std::string& path);

/// FNV-1a 64-bit hash, hex-encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace sbpdiss

#endif  // SBPDISS_IO_HPP

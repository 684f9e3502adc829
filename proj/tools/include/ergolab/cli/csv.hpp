#pragma once

// RFC-4180 tables with lossless real formatting.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or -1.
  long column(std::string_view name) const;
};

/// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double x);

/// Quotes a field when it holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv(const CsvTable& table);

/// Reads a table whose first record is the header. Throws ParseError on an
/// unterminated quote or a record whose width differs from the header.
CsvTable read_csv(std::string_view text);
CsvTable read_csv_file(const std::string& path);

}  // namespace ergolab::cli

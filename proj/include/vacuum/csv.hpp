#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace vacuum {

// Writes '#'-prefixed header lines, a column row and numeric rows with '.'
// as decimal separator and '\n' line ends. Numbers use the shortest form that
// reads back to the same double.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& comments,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  // Mixed text/number row; text cells must not contain commas.
  void row(const std::vector<std::string>& cells);
  // Flushes and reports write failures as IoError.
  void close();

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::size_t columns_ = 0;
};

std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> comments;  // header lines without the leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Index of a column; IoError if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> numeric(const std::string& name) const;
  // Value of a "# key=value" header line, empty if absent.
  std::string header_value(const std::string& key) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Truncates and writes; IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace vacuum

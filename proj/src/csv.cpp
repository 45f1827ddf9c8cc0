#include "vacuum/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vacuum/error.hpp"

namespace vacuum {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& comments,
                     const std::vector<std::string>& columns)
    : path_(path), columns_(columns.size()) {
  file_ = std::fopen(path.string().c_str(), "wb");
  if (!file_) fail(ErrorKind::io_error, "cannot open '" + path.string() + "' for writing");
  for (const auto& c : comments) std::fprintf(file_, "# %s\n", c.c_str());
  std::string header;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) header += ',';
    header += columns[i];
  }
  std::fprintf(file_, "%s\n", header.c_str());
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    fail(ErrorKind::io_error, "row width " + std::to_string(cells.size()) +
                                  " does not match " + std::to_string(columns_) +
                                  " columns in '" + path_.string() + "'");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size())
    fail(ErrorKind::io_error, "write failed on '" + path_.string() + "'");
}

void CsvWriter::close() {
  if (!file_) return;
  const bool ok = std::fflush(file_) == 0 && !std::ferror(file_);
  std::fclose(file_);
  file_ = nullptr;
  if (!ok) fail(ErrorKind::io_error, "write failed on '" + path_.string() + "'");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail(ErrorKind::io_error, "CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::numeric(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const std::string& s = r.at(c);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      fail(ErrorKind::io_error, "non-numeric cell '" + s + "' in column '" + name + "'");
    out.push_back(v);
  }
  return out;
}

std::string CsvTable::header_value(const std::string& key) const {
  const std::string prefix = key + "=";
  for (const auto& c : comments)
    if (c.rfind(prefix, 0) == 0) return c.substr(prefix.size());
  return {};
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string text = line.substr(1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      table.comments.push_back(text);
      continue;
    }
    if (!have_columns) {
      table.columns = split(line);
      have_columns = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != table.columns.size())
      fail(ErrorKind::io_error, "ragged row in '" + path.string() + "'");
    table.rows.push_back(std::move(cells));
  }
  if (!have_columns) fail(ErrorKind::io_error, "'" + path.string() + "' has no column row");
  return table;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io_error, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorKind::io_error, "write failed on '" + path.string() + "'");
}

}  // namespace vacuum

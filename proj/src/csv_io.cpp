#include "mvproj/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mvproj {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      field.push_back(ch);
    } else if (ch == ',' && !quoted) {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(trim(field));
  return fields;
}

double parse_number(const std::string& text, std::size_t row, const std::string& col) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorCode::NonFiniteValue, "row " + std::to_string(row) + " column '" + col +
                                               "': cannot parse '" + text + "' as a number");
  }
  return v;
}

Matrix numeric_block(const CsvTable& table, const std::vector<std::size_t>& cols) {
  Matrix m(table.rows.size(), cols.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m(r, c) = parse_number(table.rows[r][cols[c]], r, table.header[cols[c]]);
    }
  }
  return m;
}

std::vector<std::size_t> resolve(const CsvTable& table, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(table.column(n));
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  throw Error(ErrorCode::InvalidConfig, "no column named '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (!have_header) {
      if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) fields[0] = fields[0].substr(3);
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + " has " +
                                                    std::to_string(fields.size()) + " fields, header has " +
                                                    std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorCode::InvalidConfig, "CSV input has no header row");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_csv(in);
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

LabeledDataset labeled_from_csv(const CsvTable& table, const std::string& label_col,
                                const std::vector<std::string>& y_cols) {
  const std::size_t label_idx = table.column(label_col);
  std::vector<std::size_t> cols;
  if (y_cols.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c != label_idx) cols.push_back(c);
    }
  } else {
    cols = resolve(table, y_cols);
  }
  if (cols.empty()) throw Error(ErrorCode::DimensionMismatch, "no observation columns selected");
  std::vector<std::string> raw;
  raw.reserve(table.rows.size());
  for (const auto& row : table.rows) raw.push_back(row[label_idx]);
  return LabeledDataset::from_raw_labels(numeric_block(table, cols), raw);
}

PairedDataset paired_from_csv(const CsvTable& table, const std::vector<std::string>& x_cols,
                              const std::vector<std::string>& y_cols) {
  if (x_cols.empty() || y_cols.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "both --x-cols and --y-cols are required");
  }
  return PairedDataset(numeric_block(table, resolve(table, x_cols)),
                       numeric_block(table, resolve(table, y_cols)));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

void write_block_header(std::ostream& out, const char* prefix, std::size_t cols, bool& first) {
  for (std::size_t c = 0; c < cols; ++c) {
    if (!first) out << ',';
    out << prefix << (c + 1);
    first = false;
  }
}

void write_row(std::ostream& out, const Matrix& m, std::size_t r, bool& first) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!first) out << ',';
    out << format_double(m(r, c));
    first = false;
  }
}

}  // namespace

void write_labeled_csv(std::ostream& out, const LabeledDataset& data) {
  out << "group";
  bool first = false;
  write_block_header(out, "y", data.dim(), first);
  out << '\n';
  const auto& names = data.group_names();
  for (std::size_t r = 0; r < data.size(); ++r) {
    out << names[static_cast<std::size_t>(data.labels()[r] - 1)];
    first = false;
    write_row(out, data.y(), r, first);
    out << '\n';
  }
}

void write_paired_csv(std::ostream& out, const PairedDataset& data) {
  bool first = true;
  write_block_header(out, "x", data.x().cols(), first);
  write_block_header(out, "y", data.y().cols(), first);
  out << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    first = true;
    write_row(out, data.x(), r, first);
    write_row(out, data.y(), r, first);
    out << '\n';
  }
}

}  // namespace mvproj

#pragma once

// CSV ingestion and export: UTF-8, header row required, '.' decimal
// separator, no thousands separators. Numbers are written in shortest
// round-trip form, so a dataset written and read back is bit-identical.

#include <iosfwd>
#include <string>
#include <vector>

#include "mvproj/core.hpp"

namespace mvproj {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; InvalidConfig if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Splits "a,b,c" into names.
std::vector<std::string> split_names(const std::string& list);

/// Groups from `label_col`; observations from `y_cols`, or from every other
/// column when y_cols is empty.
LabeledDataset labeled_from_csv(const CsvTable& table, const std::string& label_col,
                                const std::vector<std::string>& y_cols = {});
PairedDataset paired_from_csv(const CsvTable& table, const std::vector<std::string>& x_cols,
                              const std::vector<std::string>& y_cols);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

void write_labeled_csv(std::ostream& out, const LabeledDataset& data);
void write_paired_csv(std::ostream& out, const PairedDataset& data);

}  // namespace mvproj

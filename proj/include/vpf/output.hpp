#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace vpf {

enum class OutputFormat { HumanTable, JSONLines, CSV };

// "table", "jsonl", "csv"
OutputFormat parse_output_format(const std::string& name);

// RFC 4180 field: quoted iff it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& value);

// Renders a cell for the text formats: strings verbatim, integer arrays as
// "1,2,3", everything else as compact JSON.
std::string cell_text(const nlohmann::json& value);

// Streams records with a fixed column set. JSONLines writes one object per
// row keyed by column; CSV writes a header row first; HumanTable pads each
// column to max(header, min width) without buffering.
class RecordWriter {
public:
  RecordWriter(OutputFormat format, std::ostream& out, std::vector<std::string> columns,
               std::vector<std::size_t> min_widths = {});

  void row(const std::vector<nlohmann::json>& cells);

private:
  void header();

  OutputFormat format_;
  std::ostream& out_;
  std::vector<std::string> columns_;
  std::vector<std::size_t> widths_;
  bool header_written_ = false;
};

}  // namespace vpf

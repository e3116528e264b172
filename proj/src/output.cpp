#include "vpf/output.hpp"

#include <algorithm>

#include "vpf/errors.hpp"

namespace vpf {

OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::HumanTable;
  if (name == "jsonl") return OutputFormat::JSONLines;
  if (name == "csv") return OutputFormat::CSV;
  throw InputError("unknown format '" + name + "' (expected table, jsonl or csv)");
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string cell_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i != 0) out += ',';
      out += cell_text(value[i]);
    }
    return out;
  }
  if (value.is_null()) return "";
  return value.dump();
}

RecordWriter::RecordWriter(OutputFormat format, std::ostream& out, std::vector<std::string> columns,
                           std::vector<std::size_t> min_widths)
    : format_(format), out_(out), columns_(std::move(columns)) {
  widths_.resize(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    widths_[c] = columns_[c].size();
    if (c < min_widths.size()) widths_[c] = std::max(widths_[c], min_widths[c]);
  }
}

void RecordWriter::header() {
  header_written_ = true;
  if (format_ == OutputFormat::JSONLines) return;
  if (format_ == OutputFormat::CSV) {
    for (std::size_t c = 0; c < columns_.size(); ++c) out_ << (c ? "," : "") << csv_field(columns_[c]);
    out_ << '\n';
    return;
  }
  std::string line;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    std::string cell = columns_[c];
    if (c + 1 < columns_.size()) cell.resize(widths_[c], ' ');
    line += (c ? "  " : "") + cell;
  }
  out_ << line << '\n';
}

void RecordWriter::row(const std::vector<nlohmann::json>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("record width does not match columns");
  if (!header_written_) header();

  switch (format_) {
    case OutputFormat::JSONLines: {
      nlohmann::ordered_json object = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < columns_.size(); ++c) object[columns_[c]] = cells[c];
      out_ << object.dump() << '\n';
      break;
    }
    case OutputFormat::CSV: {
      for (std::size_t c = 0; c < columns_.size(); ++c) out_ << (c ? "," : "") << csv_field(cell_text(cells[c]));
      out_ << '\n';
      break;
    }
    case OutputFormat::HumanTable: {
      std::string line;
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        std::string cell = cell_text(cells[c]);
        if (c + 1 < columns_.size() && cell.size() < widths_[c]) cell.resize(widths_[c], ' ');
        line += (c ? "  " : "") + cell;
      }
      out_ << line << '\n';
      break;
    }
  }
}

}  // namespace vpf

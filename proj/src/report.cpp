#include "bft/report.hpp"

#include "bft/version.hpp"

#include <charconv>
#include <stdexcept>

namespace bft {

namespace {

bool needs_quotes(const std::string& field) { return field.find_first_of(",\"\n\r") != std::string::npos; }

void append_field(std::string& out, const std::string& field) {
  if (!needs_quotes(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

// Splits one record starting at `pos`; advances `pos` past its newline.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || was_quoted) throw std::invalid_argument("csv: stray quote");
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return fields;
    } else {
      if (was_quoted) throw std::invalid_argument("csv: text after closing quote");
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quote");
  throw std::invalid_argument("csv: missing final newline");
}

}  // namespace

std::string emit_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  append_row(out, table.header);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  while (pos < text.size() && text.substr(pos, 2) == "# ") {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) throw std::invalid_argument("csv: missing final newline");
    table.comments.emplace_back(text.substr(pos + 2, end - pos - 2));
    pos = end + 1;
  }
  if (pos >= text.size()) throw std::invalid_argument("csv: missing header");
  table.header = read_record(text, pos);
  while (pos < text.size()) {
    auto row = read_record(text, pos);
    if (row.size() != table.header.size()) throw std::invalid_argument("csv: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

Json thresholds_to_json(const Thresholds& t) {
  return Json{{"se_multiplier", t.se_multiplier},
              {"significance", t.significance},
              {"repeats_required", t.repeats_required},
              {"repeats_total", t.repeats_total},
              {"min_expected", t.min_expected}};
}

std::string provenance_line(const Json& config) {
  return std::string("bft ") + kVersion + " config=" + config.dump();
}

Json result_to_json(const ExperimentResult& r, const Json& config) {
  Json j;
  j["tool"] = "bft";
  j["version"] = kVersion;
  j["config"] = config;
  j["model"] = r.model;
  j["parameters"] = Json{{"size", r.size},     {"p", r.p},
                         {"trials", r.trials}, {"seed", r.seed},
                         {"grid_points", r.grid_points}, {"test_mode", r.test_mode}};
  j["thresholds"] = thresholds_to_json(r.thresholds);
  j["summary"] = Json{{"count", r.summary.count},       {"mean", r.summary.mean},
                      {"variance", r.summary.variance}, {"min", r.summary.min},
                      {"max", r.summary.max}};
  Json hist = Json::array();
  for (const auto& [v, c] : r.histogram) hist.push_back(Json::array({v, c}));
  j["histogram"] = hist;
  if (!r.max_input_hs.empty()) {
    j["max_input_hs"] = r.max_input_hs;
    j["increments"] = r.increments;
  }
  if (!r.paths.empty()) j["paths"] = r.paths;
  return j;
}

CsvTable histogram_table(const ExperimentResult& r, const Json& config) {
  CsvTable t;
  t.comments.push_back(provenance_line(config));
  t.header = {"value", "count"};
  for (const auto& [v, c] : r.histogram) t.rows.push_back({std::to_string(v), std::to_string(c)});
  return t;
}

CsvTable trials_table(const ExperimentResult& r, const Json& config) {
  CsvTable t;
  t.comments.push_back(provenance_line(config));
  const bool block = !r.max_input_hs.empty();
  t.header = block ? std::vector<std::string>{"trial", "hs", "max_input_hs", "increment"}
                   : std::vector<std::string>{"trial", "hs"};
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    std::vector<std::string> row{std::to_string(i), format_double(r.values[i])};
    if (block) {
      row.push_back(std::to_string(r.max_input_hs[i]));
      row.push_back(std::to_string(r.increments[i]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable paths_table(const ExperimentResult& r, const Json& config) {
  CsvTable t;
  t.comments.push_back(provenance_line(config));
  t.header = {"trial", "t", "W"};
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    const auto& path = r.paths[i];
    const double grid = static_cast<double>(path.size() - 1);
    for (std::size_t g = 0; g < path.size(); ++g) {
      t.rows.push_back({std::to_string(i), format_double(static_cast<double>(g) / grid), format_double(path[g])});
    }
  }
  return t;
}

}  // namespace bft

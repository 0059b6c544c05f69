#ifndef BFT_REPORT_HPP
#define BFT_REPORT_HPP

// Serialization of experiment results and plain CSV tables.

#include "bft/montecarlo.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bft {

using Json = nlohmann::ordered_json;

/// Comment lines (without the leading "# "), a header row and data rows.
/// Fields containing commas, quotes or newlines are quoted on output.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const CsvTable&) const = default;
};

std::string emit_csv(const CsvTable& table);
/// Inverse of emit_csv; throws std::invalid_argument on malformed input.
CsvTable parse_csv(std::string_view text);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

Json thresholds_to_json(const Thresholds& t);
/// Parameters, thresholds, summary and histogram; per-trial columns and
/// paths when present.
Json result_to_json(const ExperimentResult& r, const Json& config);

CsvTable histogram_table(const ExperimentResult& r, const Json& config);
/// trial,hs,max_input_hs,increment for block runs; trial,hs otherwise.
CsvTable trials_table(const ExperimentResult& r, const Json& config);
/// trial,t,W in long form.
CsvTable paths_table(const ExperimentResult& r, const Json& config);

/// Single comment line identifying the tool, version and run config.
std::string provenance_line(const Json& config);

}  // namespace bft

#endif  // BFT_REPORT_HPP

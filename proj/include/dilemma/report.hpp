#ifndef DILEMMA_REPORT_HPP
#define DILEMMA_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "dilemma/config.hpp"

namespace dilemma {

inline constexpr const char* kVersion = "1.0.0";

/// Twelve significant digits, "." decimal separator, NaN and infinities
/// spelled out.
std::string format_number(double value);

/// RFC 4180 table with LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string sha256_hex(const std::string& bytes);

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunOutput {
  std::vector<OutputFile> files;
  nlohmann::json summary = nlohmann::json::object();
};

/// Runs the configured command and renders every output in memory. Results
/// do not depend on `threads`.
RunOutput execute(const ExperimentConfig& config, int threads = 1);

/// Writes the outputs and manifest.json into `dir`. On failure anything
/// written so far is removed. Returns the manifest.
nlohmann::json write_outputs(const ExperimentConfig& config, const RunOutput& output,
                             const std::string& dir);

}  // namespace dilemma

#endif  // DILEMMA_REPORT_HPP

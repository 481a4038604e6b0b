#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vrteh::cli {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Whole-token double parse; rejects empty tokens and trailing junk.
bool parse_double(const std::string& token, double& out);

// Writes the whole buffer with LF line endings regardless of platform.
// Throws io_error when the file cannot be created or written.
void write_text_file(const std::string& path, const std::string& content);

struct RawData {
  std::vector<double> treatment;
  std::vector<double> control;
};

// Reads an observed-response file with header `arm,value` and arm tokens
// `treatment` or `control`. Throws io_error naming the offending line on
// any structural problem; arm-size requirements are enforced downstream.
RawData read_raw_data(const std::string& path);

// Reads a discrete prior file with header `rho,weight` into (rho, weight)
// atoms. Structural problems throw io_error with the line number; value
// constraints are enforced by the prior constructor.
std::vector<std::pair<double, double>> read_prior_atoms(const std::string& path);

}  // namespace vrteh::cli

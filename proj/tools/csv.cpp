#include "csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "vrteh/errors.hpp"

namespace vrteh::cli {

namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line,
                            const std::string& what) {
  throw io_error(path + ":" + std::to_string(line) + ": " + what);
}

// Splits one data line into exactly two comma-separated fields. A lone
// trailing carriage return is stripped so files written elsewhere still load.
bool split_two(std::string line, std::string& first, std::string& second) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  if (line.find(',', comma + 1) != std::string::npos) return false;
  first = line.substr(0, comma);
  second = line.substr(comma + 1);
  return true;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return in;
}

void require_header(std::ifstream& in, const std::string& path,
                    const std::string& expected) {
  std::string line;
  if (!std::getline(in, line)) fail_line(path, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected) {
    fail_line(path, 1, "expected header '" + expected + "'");
  }
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

bool parse_double(const std::string& token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !token.empty();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot create " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw io_error("failed writing " + path);
}

RawData read_raw_data(const std::string& path) {
  std::ifstream in = open_input(path);
  require_header(in, path, "arm,value");
  RawData data;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::string arm;
    std::string value_text;
    if (!split_two(line, arm, value_text)) {
      fail_line(path, line_no, "expected two fields 'arm,value'");
    }
    double value = 0.0;
    if (!parse_double(value_text, value)) {
      fail_line(path, line_no, "malformed value '" + value_text + "'");
    }
    if (arm == "treatment") {
      data.treatment.push_back(value);
    } else if (arm == "control") {
      data.control.push_back(value);
    } else {
      fail_line(path, line_no,
                "arm must be 'treatment' or 'control', got '" + arm + "'");
    }
  }
  return data;
}

std::vector<std::pair<double, double>> read_prior_atoms(
    const std::string& path) {
  std::ifstream in = open_input(path);
  require_header(in, path, "rho,weight");
  std::vector<std::pair<double, double>> atoms;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::string rho_text;
    std::string weight_text;
    if (!split_two(line, rho_text, weight_text)) {
      fail_line(path, line_no, "expected two fields 'rho,weight'");
    }
    double rho = 0.0;
    double weight = 0.0;
    if (!parse_double(rho_text, rho)) {
      fail_line(path, line_no, "malformed rho '" + rho_text + "'");
    }
    if (!parse_double(weight_text, weight)) {
      fail_line(path, line_no, "malformed weight '" + weight_text + "'");
    }
    atoms.emplace_back(rho, weight);
  }
  return atoms;
}

}  // namespace vrteh::cli

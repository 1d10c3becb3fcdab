#pragma once

#include <map>
#include <string>
#include <vector>

namespace goepf {

// Minimal JSON value for byte-deterministic emission: keys sorted (std::map
// order), numbers printed with 17 significant digits, output newline
// terminated.
struct Json {
  enum class Type { object, array, number, string, boolean };
  Type type = Type::object;
  std::map<std::string, Json> obj;
  std::vector<Json> arr;
  double num = 0.0;
  std::string str;
  bool flag = false;

  static Json object() { return Json{}; }
  static Json array() {
    Json j;
    j.type = Type::array;
    return j;
  }
  static Json number(double v) {
    Json j;
    j.type = Type::number;
    j.num = v;
    return j;
  }
  static Json string_value(const std::string& s) {
    Json j;
    j.type = Type::string;
    j.str = s;
    return j;
  }
  static Json boolean(bool b) {
    Json j;
    j.type = Type::boolean;
    j.flag = b;
    return j;
  }
};

// %.17g, round-trip exact.
std::string format_double(double v);

std::string to_json_string(const Json& j);

// Comma-separated, header row, \n line endings; cells are emitted verbatim.
std::string to_csv_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

struct RunConfig {
  std::string command;
  double window_lo = -12.0;
  double window_hi = 12.0;
  int m = 80;
  int L_max = 3;
  std::vector<double> x_list, p_list, t_list, s_list, s0_list, p_grid;
  std::vector<std::vector<double>> point_sets;
  std::string suite;
  int density = 1;
  std::string out_path;  // empty: stdout
  std::string format = "csv";
};

// Executes the named computation and writes results.
// Exit status: 0 success, 1 validation failure, 2 numeric failure.
int run(const RunConfig& cfg);

}  // namespace goepf

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace revmc::testing {

struct GoldenCase {
  std::string name;  ///< file stem under the golden directory
  std::vector<std::string> args;
};

/// One case per command over the flip, lazy2 and mh3 fixtures. Paths in
/// `args` are relative to the data directory.
inline std::vector<GoldenCase> golden_cases() {
  std::vector<GoldenCase> cases;
  for (const std::string fixture : {"flip", "lazy2", "mh3"}) {
    const std::string file = fixture + ".chain";
    cases.push_back({"analyze_" + fixture, {"analyze", file}});
    cases.push_back({"variance_" + fixture, {"variance", file, "--function", "h"}});
    cases.push_back({"conductance_" + fixture, {"conductance", file, "--exact"}});
    cases.push_back({"cheeger_" + fixture, {"cheeger", file}});
    cases.push_back(
        {"compare_" + fixture, {"compare", file, fixture + "_half.chain", "--function", "h"}});
  }
  return cases;
}

/// Full command line for a case, with data paths made absolute and JSON output.
inline std::vector<std::string> golden_command(const GoldenCase& c, const std::string& data_dir) {
  std::vector<std::string> args{"--format", "json"};
  for (const std::string& a : c.args) {
    const bool is_file = a.size() > 6 && a.compare(a.size() - 6, 6, ".chain") == 0;
    args.push_back(is_file ? data_dir + "/" + a : a);
  }
  return args;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace revmc::testing

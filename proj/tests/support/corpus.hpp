#pragma once

// The shipped spec files and the expectations written in their comments.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "icat/frontend/workspace.hpp"

namespace corpus {

inline std::filesystem::path root() { return ICAT_CORPUS_DIR; }

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::filesystem::path> files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".icat") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::filesystem::path> instances() { return files(root()); }
inline std::vector<std::filesystem::path> mutations() { return files(root() / "mutations"); }

// `# family: <text>` and `# expect: fail <target> <id,id,...>`.
struct Expectation {
  std::string family;
  std::string target;
  std::set<std::string> failing;
};

inline Expectation expectation(const std::string& text) {
  Expectation e;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# family: ", 0) == 0) e.family = line.substr(10);
    if (line.rfind("# expect: fail ", 0) == 0) {
      std::istringstream w(line.substr(15));
      std::string ids;
      w >> e.target >> ids;
      std::size_t start = 0;
      while (start <= ids.size()) {
        std::size_t c = ids.find(',', start);
        if (c == std::string::npos) c = ids.size();
        if (c > start) e.failing.insert(ids.substr(start, c - start));
        start = c + 1;
      }
    }
  }
  return e;
}

inline icat::frontend::Workspace load(const std::filesystem::path& p, std::size_t bound = icat::kDefaultBound) {
  return icat::frontend::parse_spec(read(p), bound);
}

}  // namespace corpus

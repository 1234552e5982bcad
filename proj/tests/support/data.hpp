#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ilock::test {

inline std::string dataPath(const std::string& rel) {
  return std::string(ILOCK_DATA_DIR) + "/" + rel;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string readData(const std::string& rel) { return readFile(dataPath(rel)); }

}  // namespace ilock::test

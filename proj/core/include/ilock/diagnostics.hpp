#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilock {

/// Library-level failure (programmer misuse, broken preconditions).
/// User-input problems are reported as Diagnostics instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceLoc {
  std::string file;
  int line = 0;  // 1-based; 0 = unknown
  int col = 0;
};

struct Diagnostic {
  std::optional<SourceLoc> loc;
  std::string code;     // stable identifier, e.g. "E-SORT", "W-DOUBLE-WRITE"
  std::string message;

  bool isWarning() const { return !code.empty() && code[0] == 'W'; }

  // file:line:col: code: message (loc-less diagnostics drop the prefix)
  std::string format() const {
    std::string out;
    if (loc && loc->line > 0) {
      out += loc->file;
      out += ':' + std::to_string(loc->line) + ':' + std::to_string(loc->col) + ": ";
    } else if (loc && !loc->file.empty()) {
      out += loc->file + ": ";
    }
    out += code + ": " + message;
    return out;
  }
};

using Diagnostics = std::vector<Diagnostic>;

inline bool hasErrors(const Diagnostics& ds) {
  for (const auto& d : ds)
    if (!d.isWarning()) return true;
  return false;
}

inline std::string formatAll(const Diagnostics& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += d.format();
    out += '\n';
  }
  return out;
}

}  // namespace ilock

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wsuper {

/// Outcome of one identity check: how many instances ran and which failed.
struct CheckReport {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string where) { violations.push_back(std::move(where)); }
  void merge(const CheckReport& o) {
    checked += o.checked;
    for (const auto& v : o.violations) violations.push_back(o.name.empty() ? v : o.name + ": " + v);
  }
};

}  // namespace wsuper

#pragma once

// Verification reports: one line item per check, exit status derived from
// the items alone.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wachlab::io {

enum class Status { Pass, Fail, Undecided, Info };
const char* to_string(Status s);

struct LineItem {
  std::string name;    // stable identifier, no spaces
  Status status;
  std::string detail;  // human-readable
  std::vector<std::pair<std::string, std::string>> fields;  // machine record
  std::optional<std::string> witness;
};

enum ExitCode : int { kPass = 0, kFail = 1, kUndecided = 2, kInputError = 3 };

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  LineItem& add(std::string name, Status status, std::string detail = {});
  const std::vector<LineItem>& items() const noexcept { return items_; }

  /// 1 if any item failed, else 2 if any is undecided, else 0.
  int exit_code() const;
  std::string render_text() const;
  /// One `key=value` record per line item, then a final summary record.
  std::string render_machine() const;

 private:
  std::string command_;
  std::vector<LineItem> items_;
};

}  // namespace wachlab::io

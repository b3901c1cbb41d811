#include "wachlab/io/report.hpp"

#include <algorithm>
#include <sstream>

namespace wachlab::io {

namespace {

std::string token(std::string v) {
  std::replace_if(v.begin(), v.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; }, '_');
  return v.empty() ? "-" : v;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Undecided: return "undecided";
    case Status::Info: return "info";
  }
  return "?";
}

LineItem& Report::add(std::string name, Status status, std::string detail) {
  items_.push_back({std::move(name), status, std::move(detail), {}, std::nullopt});
  return items_.back();
}

int Report::exit_code() const {
  int code = kPass;
  for (const auto& it : items_) {
    if (it.status == Status::Fail) return kFail;
    if (it.status == Status::Undecided) code = kUndecided;
  }
  return code;
}

std::string Report::render_text() const {
  std::ostringstream os;
  os << command_ << '\n';
  std::size_t width = 0;
  for (const auto& it : items_) width = std::max(width, it.name.size());
  for (const auto& it : items_) {
    std::string status = std::string("[") + to_string(it.status) + "]";
    status.resize(12, ' ');
    std::string name = it.name;
    name.resize(width, ' ');
    os << "  " << status << name;
    if (!it.detail.empty()) os << "  " << it.detail;
    os << '\n';
    if (it.witness) os << "      witness: " << *it.witness << '\n';
  }
  const int code = exit_code();
  os << "result: " << (code == kPass ? "pass" : code == kFail ? "fail" : "undecided") << '\n';
  return os.str();
}

std::string Report::render_machine() const {
  std::ostringstream os;
  for (const auto& it : items_) {
    os << "command=" << token(command_) << " check=" << token(it.name) << " status=" << to_string(it.status);
    for (const auto& [k, v] : it.fields) os << ' ' << token(k) << '=' << token(v);
    if (it.witness) os << " witness=" << token(*it.witness);
    os << '\n';
  }
  const int code = exit_code();
  os << "command=" << token(command_) << " result=" << (code == kPass ? "pass" : code == kFail ? "fail" : "undecided")
     << " exit=" << code << '\n';
  return os.str();
}

}  // namespace wachlab::io

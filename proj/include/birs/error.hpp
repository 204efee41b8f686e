#pragma once

#include <stdexcept>
#include <string>

namespace birs {

// Every failure surfaced by the library carries a stable machine-readable
// code (e.g. "DanglingReference") next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message);

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace birs

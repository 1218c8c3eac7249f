#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nodalarcs {

// Library error with a stable machine-readable code ("ZeroInput",
// "NotInMu", "OrderTooSmall", ...). The CLI maps codes to its JSON
// error object; tests match on code().
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what) {
  throw Error(std::move(code), what);
}

}  // namespace nodalarcs

#pragma once

#include <stdexcept>
#include <string>

namespace ehrner {

// Every failure carries a module name and a stable code string such as
// "CrossingSpan"; qualified() gives "corpus.CrossingSpan" for CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string code, const std::string& detail)
      : std::runtime_error(detail), module_(std::move(module)), code_(std::move(code)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& code() const noexcept { return code_; }
  std::string qualified() const { return module_ + "." + code_; }

 private:
  std::string module_;
  std::string code_;
};

}  // namespace ehrner

#pragma once

#include <stdexcept>
#include <string>

namespace permsphere {

enum class ErrorCode {
  invalid_argument = 1,
  invalid_dimension,
  index_out_of_range,
  zero_projection,
  too_large,
  domain,
  numeric,
};

// Every failure in the core library is reported as an Error; the C API maps
// the code onto ps_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permsphere

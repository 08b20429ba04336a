#ifndef TERMBENCH_ERROR_HPP
#define TERMBENCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace termbench {

// Domain error for file/format/protocol failures. Precondition
// violations (bad argument ranges) use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace termbench

#endif

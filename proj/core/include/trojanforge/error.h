#ifndef TROJANFORGE_ERROR_H_
#define TROJANFORGE_ERROR_H_

#include <stdexcept>
#include <string>

namespace trojanforge {

// Raised for every contract violation in the library: bad widths, out of
// range trigger indices, malformed traces, mismatched configurations.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trojanforge

#endif  // TROJANFORGE_ERROR_H_

#ifndef WG_ERRORS_HH
#define WG_ERRORS_HH

#include <stdexcept>
#include <string>

namespace wg {

// Error taxonomy shared by the library and the CLI exit codes:
// domain -> 2, capacity -> 3, undecidable -> 4.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& m) : std::runtime_error(m) {}
};

struct undecidable_error : std::runtime_error {
  explicit undecidable_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace wg

#endif  // WG_ERRORS_HH

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arena {

// Domain errors carry a stable machine-readable code string; the CLI maps
// them to exit code 1 with a structured payload.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* invalid_graph = "invalid-graph";
inline constexpr const char* invalid_instance = "invalid-instance";
inline constexpr const char* invalid_routing = "invalid-routing";
inline constexpr const char* no_path = "no-path";
inline constexpr const char* result_too_large = "result-too-large";
inline constexpr const char* search_budget_exceeded = "search-budget-exceeded";
inline constexpr const char* rejection_failure = "rejection-failure";
inline constexpr const char* no_support_set = "no-support-set";
inline constexpr const char* internal_inconsistency = "internal-inconsistency";
inline constexpr const char* parse_error = "parse-error";
inline constexpr const char* format_version = "format-version-mismatch";
inline constexpr const char* precondition = "precondition-violated";
}  // namespace errc

}  // namespace arena

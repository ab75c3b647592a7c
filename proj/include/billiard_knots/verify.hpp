#ifndef BILLIARD_KNOTS_VERIFY_HPP
#define BILLIARD_KNOTS_VERIFY_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace bk {

struct VerifyOutcome {
  bool passed = false;
  std::vector<std::string> checks_passed;
  std::string failed_check;  // empty when passed
  std::string message;
};

/// Rebuilds the polygon from the exact lines in the report and re-runs, in
/// order: polygon, mirror_room, table, walls, reflection, heights, certify.
/// Stops at the first failure. Throws ParseError when a file is missing or
/// malformed.
VerifyOutcome verify_report(const std::filesystem::path& report_path);

}  // namespace bk

#endif  // BILLIARD_KNOTS_VERIFY_HPP

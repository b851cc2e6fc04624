#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torusfhn {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInvalidMode = 2;
inline constexpr int kExitNoBoundary = 3;
inline constexpr int kExitDiverged = 4;
inline constexpr int kExitBadTrajectory = 5;
inline constexpr int kExitNotAtHopf = 6;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace torusfhn

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sintra/rdo.hpp"

namespace sintra {

// Text sidecar, one record per coded block:
//   plane x y size mode interp flagged mask
// interp is "bilinear" or "nearest", flagged 0/1, and mask either "-" or one
// 0/1 character per sample (row-major) for per-sample selection. A line
// "frame <n>" opens each frame; '#' starts a comment.

using DecisionLog = std::vector<std::vector<ModeDecision>>;

void write_decision_log(std::ostream& out, const DecisionLog& log);
DecisionLog read_decision_log(std::istream& in);

void save_decision_log(const std::string& path, const DecisionLog& log);
DecisionLog load_decision_log(const std::string& path);

}  // namespace sintra

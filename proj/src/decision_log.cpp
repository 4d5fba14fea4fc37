#include "sintra/decision_log.hpp"

#include <fstream>
#include <sstream>

namespace sintra {

void write_decision_log(std::ostream& out, const DecisionLog& log) {
  out << "# plane x y size mode interp flagged mask\n";
  for (std::size_t f = 0; f < log.size(); ++f) {
    out << "frame " << f << '\n';
    for (const ModeDecision& d : log[f]) {
      out << d.block.plane_index << ' ' << d.block.x << ' ' << d.block.y << ' ' << d.block.size << ' '
          << d.mode.index() << ' ' << to_string(d.interp) << ' ' << (d.flag_signaled ? 1 : 0) << ' ';
      if (d.nearest_mask.empty()) {
        out << '-';
      } else {
        for (std::uint8_t m : d.nearest_mask) out << (m ? '1' : '0');
      }
      out << '\n';
    }
  }
}

DecisionLog read_decision_log(std::istream& in) {
  DecisionLog log;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      return Error("decision log line " + std::to_string(line_no) + ": " + why);
    };
    std::istringstream ls(line);
    if (line.rfind("frame", 0) == 0) {
      std::string word;
      std::size_t index = 0;
      if (!(ls >> word >> index) || index != log.size()) throw fail("bad frame marker");
      log.emplace_back();
      continue;
    }
    if (log.empty()) throw fail("record before the first frame marker");

    ModeDecision d;
    int mode = 0;
    int flagged = 0;
    std::string interp, mask;
    if (!(ls >> d.block.plane_index >> d.block.x >> d.block.y >> d.block.size >> mode >> interp >> flagged >> mask)) {
      throw fail("malformed record");
    }
    if (!is_valid_block_size(d.block.size) || d.block.plane_index < 0 || d.block.plane_index > 2) {
      throw fail("bad block");
    }
    if (mode < 0 || mode >= IntraMode::kCount) throw fail("bad mode");
    d.mode = IntraMode(mode);
    const auto kind = parse_interp_kind(interp);
    if (!kind) throw fail("bad interpolation kind");
    d.interp = *kind;
    d.flag_signaled = flagged != 0;
    if (mask != "-") {
      if (mask.size() != static_cast<std::size_t>(d.block.size) * d.block.size) throw fail("bad mask length");
      for (char c : mask) {
        if (c != '0' && c != '1') throw fail("bad mask character");
        d.nearest_mask.push_back(c == '1' ? 1 : 0);
      }
    }
    log.back().push_back(std::move(d));
  }
  return log;
}

void save_decision_log(const std::string& path, const DecisionLog& log) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_decision_log(out, log);
  if (!out) throw Error("failed writing " + path);
}

DecisionLog load_decision_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read_decision_log(in);
}

}  // namespace sintra

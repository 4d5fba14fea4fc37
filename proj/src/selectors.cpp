#include "sintra/selectors.hpp"

#include <string>

namespace sintra {

std::vector<int> RefCategory::members(int size) const {
  std::vector<int> out;
  const int n = size;
  switch (id) {
    case 1:
      for (int i = 0; i < 2 * n; ++i) out.push_back(i);
      break;
    case 2:
      for (int i = n; i <= 3 * n; ++i) out.push_back(i);
      break;
    case 3:
      for (int i = 2 * n + 1; i <= 4 * n; ++i) out.push_back(i);
      break;
    default:
      throw UsageError("reference category must be 1, 2 or 3");
  }
  return out;
}

std::optional<RefCategory> category_of(IntraMode mode) {
  const int m = mode.index();
  if (m >= 3 && m <= 9) return RefCategory{1};
  if ((m >= 11 && m <= 17) || (m >= 19 && m <= 25)) return RefCategory{2};
  if (m >= 27 && m <= 33) return RefCategory{3};
  return std::nullopt;
}

ReferenceSad reference_sad(const ReferenceSamples& refs, const RefCategory& category) {
  const auto members = category.members(refs.size());
  const auto entries = refs.entries();
  std::int64_t sum = 0;
  for (int i : members) sum += entries[static_cast<std::size_t>(i)];
  const auto count = static_cast<std::int64_t>(members.size());
  ReferenceSad out;
  out.count = static_cast<std::uint32_t>(count);
  for (int i : members) {
    const std::int64_t d = count * entries[static_cast<std::size_t>(i)] - sum;
    out.scaled += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return out;
}

int scaled_threshold(int base, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 10 && bit_depth != 12) {
    throw UsageError("unsupported bit depth for threshold scaling: " + std::to_string(bit_depth));
  }
  return base << (bit_depth - 8);
}

InterpKind select_by_sad(const ReferenceSamples& refs, IntraMode mode, const SelectorConfig& cfg) {
  const auto category = category_of(mode);
  if (!category) throw UsageError("mode " + std::to_string(mode.index()) + " has no reference category");
  return reference_sad(refs, *category).at_least(cfg.scaled_sad()) ? InterpKind::Nearest : InterpKind::Bilinear;
}

}  // namespace sintra

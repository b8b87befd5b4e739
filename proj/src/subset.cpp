#include "subcount/subset.hpp"

#include <charconv>

#include "subcount/error.hpp"

namespace subcount {

Subset subset_from_elements(std::span<const int> elements, int n) {
  Subset s;
  for (int e : elements) {
    if (e < 0 || e >= n)
      raise(ErrorCode::InvalidSubset,
            "element " + std::to_string(e) + " outside ground set of size " +
                std::to_string(n));
    if (s.contains(e))
      raise(ErrorCode::InvalidSubset, "duplicate element " + std::to_string(e));
    s = s.with(e);
  }
  return s;
}

Subset parse_subset(std::string_view text, int n) {
  if (text == ".") return Subset{};
  if (text.empty()) raise(ErrorCode::InvalidSubset, "empty subset text");
  Subset s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      raise(ErrorCode::InvalidSubset, "bad element '" + std::string(tok) + "'");
    if (value < 0 || value >= n)
      raise(ErrorCode::InvalidSubset,
            "element " + std::to_string(value) + " outside ground set of size " +
                std::to_string(n));
    if (s.contains(value))
      raise(ErrorCode::InvalidSubset, "duplicate element " + std::to_string(value));
    s = s.with(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size())
      raise(ErrorCode::InvalidSubset, "trailing comma in subset text");
  }
  return s;
}

std::string format_subset(Subset s) {
  if (s.empty()) return ".";
  std::string out;
  for (int i = 0; i < 64; ++i) {
    if (!s.contains(i)) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace subcount

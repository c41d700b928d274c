#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace masknews {

// Enables heterogeneous string_view lookup in unordered containers keyed
// by std::string, avoiding a temporary allocation per probe.
struct TransparentStringHash {
  using is_transparent = void;

  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
  std::size_t operator()(const std::string& s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace masknews

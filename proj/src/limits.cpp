#include "hyperspectra/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

namespace {

std::uint64_t to_number(std::string_view text) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("budget value '" + std::string(text) + "' is not a non-negative integer");
  }
  return out;
}

}  // namespace

Limits parse_limits(std::string_view spec, Limits base) {
  if (spec.empty()) return base;
  if (spec.find('=') == std::string_view::npos) {
    base.enumeration_cap = to_number(spec);
    return base;
  }
  while (!spec.empty()) {
    auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("budget item '" + std::string(item) + "' lacks '='");
    std::string_view key = item.substr(0, eq);
    std::uint64_t value = to_number(item.substr(eq + 1));
    if (key == "enum_cap") base.enumeration_cap = value;
    else if (key == "pair_cap") base.pair_cap = value;
    else if (key == "extension_cap") base.extension_cap = value;
    else if (key == "decomposition_cap") base.decomposition_cap = value;
    else if (key == "eval") base.eval_budget = value;
    else if (key == "game") base.game_budget = value;
    else if (key == "sample") base.sample_budget = value;
    else throw ParseError("unknown budget key '" + std::string(key) + "'");
  }
  return base;
}

const Limits& default_limits() {
  static const Limits limits = [] {
    const char* env = std::getenv("HYPERSPECTRA_BUDGET");
    return env ? parse_limits(env) : Limits{};
  }();
  return limits;
}

}  // namespace hyperspectra

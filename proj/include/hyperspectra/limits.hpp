#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hyperspectra {

// Enumeration caps and node-visit budgets shared by every module. Exceeding a cap
// raises CapExceeded or BudgetExceeded instead of running unbounded.
struct Limits {
  std::size_t enumeration_cap = 12;       // automorphisms, copy patterns
  std::size_t pair_cap = 16;              // extra vertices enumerated for pair densities
  std::size_t extension_cap = 8;          // non-root vertices of strict extensions
  std::size_t decomposition_cap = 20;     // vertices for m-decomposition
  std::uint64_t eval_budget = 100'000'000;
  std::uint64_t game_budget = 50'000'000;
  std::uint64_t sample_budget = 10'000'000;  // potential edges per sample
};

// Parses "N" (sets enumeration_cap) or "key=value,key=value" with keys
// enum_cap, pair_cap, extension_cap, decomposition_cap, eval, game, sample.
Limits parse_limits(std::string_view spec, Limits base = {});

// Defaults, overridden once at first use by the HYPERSPECTRA_BUDGET variable.
const Limits& default_limits();

}  // namespace hyperspectra

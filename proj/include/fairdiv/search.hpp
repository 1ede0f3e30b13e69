#pragma once

#include <cstdint>
#include <optional>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// Node limit for an exhaustive search. Running out yields Unknown.
class SearchBudget {
 public:
  explicit SearchBudget(std::uint64_t max_nodes) : max_nodes_(max_nodes) {
    if (max_nodes == 0) throw ContractViolation("search budget must be positive");
  }
  std::uint64_t max_nodes() const noexcept { return max_nodes_; }

 private:
  std::uint64_t max_nodes_;
};

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

/// Three-valued search outcome. `nodes` is the number of search nodes spent,
/// which makes an Unknown boundary reproducible.
template <class Witness>
struct TriVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;

  bool yes() const noexcept { return verdict == Verdict::Yes; }
  bool no() const noexcept { return verdict == Verdict::No; }
  bool unknown() const noexcept { return verdict == Verdict::Unknown; }
};

namespace detail {

/// Shared countdown across nested searches.
class NodeCounter {
 public:
  explicit NodeCounter(const SearchBudget& budget) : limit_(budget.max_nodes()) {}

  /// Counts one node; false once the budget is exhausted.
  bool tick() {
    if (used_ >= limit_) {
      exhausted_ = true;
      return false;
    }
    ++used_;
    return true;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t remaining() const noexcept { return limit_ - used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail
}  // namespace fairdiv

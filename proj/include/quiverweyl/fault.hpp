#pragma once

#include <cstddef>
#include <optional>

namespace quiverweyl {

// Branches of the η case analysis. The three degenerate-source branches
// split "degenerate ↔ degenerate" into its c = 0 and a = c·a_j subcases.
enum class EtaCase {
  generic,                // no ∞ before or after
  generic_to_degenerate,  // some a_j is sent to ∞
  degenerate_to_generic,  // ∞ is sent to a finite point
  degenerate_c_zero,      // ∞ fixed (c = 0)
  degenerate_swap,        // ∞ moves and some a_j becomes ∞
};

inline const char* to_string(EtaCase c) {
  switch (c) {
    case EtaCase::generic: return "generic";
    case EtaCase::generic_to_degenerate: return "generic->degenerate";
    case EtaCase::degenerate_to_generic: return "degenerate->generic";
    case EtaCase::degenerate_c_zero: return "degenerate (c = 0)";
    case EtaCase::degenerate_swap: return "degenerate (a = c*a_j)";
  }
  return "?";
}

// Mutation hooks used to check that the verification suites notice a
// wrong sign. Set only through ScopedFault, before checks start.
struct FaultPlan {
  std::optional<std::size_t> flip_epsilon_arrow;
  std::optional<EtaCase> negate_eta_case;
};

inline FaultPlan& active_faults() {
  static FaultPlan plan;
  return plan;
}

class ScopedFault {
 public:
  explicit ScopedFault(FaultPlan plan) : saved_(active_faults()) { active_faults() = plan; }
  ~ScopedFault() { active_faults() = saved_; }
  ScopedFault(const ScopedFault&) = delete;
  ScopedFault& operator=(const ScopedFault&) = delete;

 private:
  FaultPlan saved_;
};

}  // namespace quiverweyl

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "endo.hpp"
#include "group.hpp"
#include "scalar.hpp"

namespace gconv {

// HypothesisFailed is kept apart from Refuted: it means the checker never
// reached the statement because the instance did not meet its premises.
enum class VerdictStatus { Proved, Refuted, Unfalsified, HypothesisFailed };

std::string_view status_name(VerdictStatus s);

struct WitnessItem {
  std::string label;
  std::variant<Element, Endomorphism, Rational, std::string> value;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Proved;
  std::vector<WitnessItem> witness;
  std::uint64_t samples = 0;
  std::string hypothesis;  // set when status == HypothesisFailed
  std::string note;

  static Verdict proved(std::string note = {});
  static Verdict refuted(std::vector<WitnessItem> witness, std::string note = {});
  static Verdict unfalsified(std::uint64_t samples, std::string note = {});
  static Verdict hypothesis_failed(std::string name, std::string note = {});

  bool is_proved() const { return status == VerdictStatus::Proved; }
  bool is_refuted() const { return status == VerdictStatus::Refuted; }

  // First witness entry with the given label, if it holds a T.
  template <class T>
  const T* get(std::string_view label) const {
    for (const auto& w : witness)
      if (w.label == label) return std::get_if<T>(&w.value);
    return nullptr;
  }
};

// Conjunction: the first non-Proved verdict wins; Unfalsified sample counts add up.
Verdict combine(const Verdict& a, const Verdict& b);

std::string format_witness(const GroupSpec& g, const WitnessItem& w);

}  // namespace gconv

#include "verdict.hpp"

namespace gconv {

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Proved: return "Proved";
    case VerdictStatus::Refuted: return "Refuted";
    case VerdictStatus::Unfalsified: return "Unfalsified";
    case VerdictStatus::HypothesisFailed: return "HypothesisFailed";
  }
  return "?";
}

Verdict Verdict::proved(std::string note) {
  Verdict v;
  v.status = VerdictStatus::Proved;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::refuted(std::vector<WitnessItem> witness, std::string note) {
  Verdict v;
  v.status = VerdictStatus::Refuted;
  v.witness = std::move(witness);
  v.note = std::move(note);
  return v;
}

Verdict Verdict::unfalsified(std::uint64_t samples, std::string note) {
  Verdict v;
  v.status = VerdictStatus::Unfalsified;
  v.samples = samples;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::hypothesis_failed(std::string name, std::string note) {
  Verdict v;
  v.status = VerdictStatus::HypothesisFailed;
  v.hypothesis = std::move(name);
  v.note = std::move(note);
  return v;
}

Verdict combine(const Verdict& a, const Verdict& b) {
  if (a.status == VerdictStatus::Refuted || a.status == VerdictStatus::HypothesisFailed) return a;
  if (b.status == VerdictStatus::Refuted || b.status == VerdictStatus::HypothesisFailed) return b;
  if (a.status == VerdictStatus::Unfalsified || b.status == VerdictStatus::Unfalsified) {
    Verdict v = Verdict::unfalsified(a.samples + b.samples);
    v.note = a.note.empty() ? b.note : a.note;
    return v;
  }
  return a;
}

std::string format_witness(const GroupSpec& g, const WitnessItem& w) {
  struct Visitor {
    const GroupSpec& g;
    std::string operator()(const Element& x) const { return g.format_element(x); }
    std::string operator()(const Endomorphism& t) const { return t.format(); }
    std::string operator()(const Rational& q) const { return g.format_scalar(q); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return w.label + " = " + std::visit(Visitor{g}, w.value);
}

}  // namespace gconv

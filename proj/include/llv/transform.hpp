#pragma once

#include <cstddef>
#include <vector>

#include "llv/derivation.hpp"
#include "llv/reduction.hpp"

namespace llv {

struct TraceStep {
  StepLabel label;
  Term result;
};

/// A reduction sequence; every step replays through reduction::step.
struct Trace {
  Term start;
  std::vector<TraceStep> steps;

  const Term& end() const { return steps.empty() ? start : steps.back().result; }
  std::size_t length() const { return steps.size(); }
};

/// Throws TermError when some step does not replay.
void validate_trace(const Trace& t);

struct GuidedStep {
  StepLabel label;
  Term result;
  Derivation derivation;
};

/// One reduction step of a closed, reducible subject chosen by the
/// derivation (the recorded branch at choice nodes, the leftmost redex
/// otherwise), with a derivation of the reduct whose measure is one less.
GuidedStep guided_step(const Derivation& d);

/// Guided steps until the subject is normal. For a typing with
/// 1 % ... % 1 the trace has exactly measure(d) steps.
Trace guided_run(const Derivation& d);

/// From a derivation of the reduct of m along `label`, a derivation of m
/// with the same context and type and measure one more.
Derivation expand_step(const Derivation& d, const Term& m, const StepLabel& label);

/// A derivation of |- start : 1 % ... % 1 with measure equal to the trace
/// length, for a trace ending in a parallel composition of values.
Derivation type_via_trace(const Trace& t);

}  // namespace llv

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqsp/conditions.hpp"

namespace mqsp {

struct BranchNote {
  int depth = 0;
  char axis = '-';  // 'A', 'B', or '-' for base-case notes
  std::string status;
};

struct DecomposeResult {
  std::optional<Protocol> protocol;
  std::vector<BranchNote> trace;
  bool decomposable() const { return protocol.has_value(); }
};

struct DecomposeOptions {
  double coeff_tol = 1e-9;     // float rebuild / base-case tolerance
  double prop_rel_tol = 1e-8;  // top-slice proportionality
  double peel_tol = 1e-8;      // residual top-slice norm accepted by a peel
  bool check_precondition = true;
};

/// Depth-first peel-down recovery of a Protocol from a PolyPair.  At each
/// level the top slices of axis A (tried first) and axis B are tested for
/// proportionality P_top = e^{2i phi} Q_top; a proportional axis is peeled
/// with the root phi in (-pi/2, pi/2] (the phi + pi root yields the
/// negated pair, equivalent under a phi_0 shift, and is pruned).  When
/// both top slices vanish the declared box is overstated and the branch
/// re-declares the pair two degrees lower on that axis instead of
/// peeling.  On success, build(protocol) reproduces the input pair.
///
/// Throws PrecondViolated when the input fails the Revised conditions.
DecomposeResult decompose(const PolyPair& pair, const DecomposeOptions& opts = {});

struct RoundtripReport {
  Protocol recovered;
  double max_deviation = 0.0;  // max per-coefficient |build(decompose) - pair|
  bool exact_match = false;
};

/// build -> decompose -> build; reports the worst coefficient deviation.
/// Throws PrecondViolated if the built pair unexpectedly fails to
/// decompose.
RoundtripReport roundtrip_report(const Protocol& prot,
                                 const DecomposeOptions& opts = {});

}  // namespace mqsp

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mqsp/protocol.hpp"

namespace mqsp::cli {

/// Runs one subcommand.  Exit codes: 0 success / check passed, 1 check
/// failure, NotDecomposable or search NotFound, 2 usage or input format
/// error.  `out` and `err` default to std::cout / std::cerr.
int run(const std::vector<std::string>& args);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Torus-grid CSV rows "theta_a,theta_b,abs_P2,abs_Q2,sum" for
/// theta = 2*pi*r/resolution.  Floats printed with %.17g.
void sample_grid(const PolyPair& pair, int resolution, std::ostream& out);

}  // namespace mqsp::cli

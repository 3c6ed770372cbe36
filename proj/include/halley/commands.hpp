#pragma once

#include <iosfwd>

#include "halley/config.hpp"
#include "halley/paperlab.hpp"

namespace halley {

/// Writes the PPM to cfg.output and CSV sections to `summary`: degree, fixed
/// points with multipliers, free critical fates, label counts and basin
/// boundedness evidence for each root inside the window.
void cmd_render(const JobConfig& cfg, std::ostream& summary);

/// Fixed-point table, extraneous fixed points and symmetry orders as CSV
/// sections.
void cmd_analyze(const JobConfig& cfg, std::ostream& out);

/// Cycle-condition polynomial, (b + 7) factor check and the five cycle
/// candidates.
void cmd_cycles(std::ostream& out);

/// Axis profile CSV.
void cmd_profile(const JobConfig& cfg, std::ostream& out);

/// One line per experiment. Returns true when all selected experiments pass.
bool cmd_paperlab(const PaperlabOptions& opts, std::ostream& out);

}  // namespace halley

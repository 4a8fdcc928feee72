#pragma once

#include <string>
#include <vector>

#include "bpl/report.hpp"

namespace bpl {

/// Selectors accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs the checks of `selector` (ybe, rtt, off, spectrum, fz, omega,
/// omega.extract, omega.eigk, omega.compare, pde, pde.residual, pde.special,
/// reduction, dwbc, dwbc.partition, dwbc.pde, dwbc.upsilon, all) against a
/// validated config. Unknown selectors raise InvalidArgument.
RunReport run_suite(const SpectralConfig& cfg, const std::string& selector);

}  // namespace bpl

#pragma once

// JSON snapshot of a coefficient-engine state. Coefficients are written in
// shortest round-trip decimal form, so restore is bit-exact.

#include <string>
#include <string_view>

#include "tkernel/tsgd.hpp"

namespace tkernel {

std::string dump_snapshot(const TKernelSgd& est);
TKernelSgd load_snapshot(std::string_view text);

}  // namespace tkernel

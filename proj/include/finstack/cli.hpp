// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace finstack::cli {

/// Runs one command.  Returns the process exit code: 0 for success or a true
/// verdict, 1 for a false verdict (evidence is printed), 2 for input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finstack::cli

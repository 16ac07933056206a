#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flatcusp {

/// Runs one command. `args` excludes the program name. Returns 0 on success,
/// 1 on usage errors, 2 on domain errors (printed as {"error","message"}).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatcusp

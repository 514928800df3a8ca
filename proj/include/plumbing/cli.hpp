#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plumbing {

// Runs one command line (without the program name). Returns 0 on success or a
// positive verdict, 1 on a negative verdict, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace plumbing

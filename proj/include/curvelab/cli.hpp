#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvelab::cli {

// Runs one command line (without the program name). JSON goes to `out`
// unless --out is given; diagnostics go to `err` as JSON. Exit codes: 0
// success, 1 invariant violation, 2 usage error or invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv);

}  // namespace curvelab::cli

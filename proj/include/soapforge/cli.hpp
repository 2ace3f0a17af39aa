#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soapforge::cli {

/// Runs one CLI invocation (args exclude the program name) writing results to
/// `out` and diagnostics to `err`. Exit codes: 0 success, 2 usage/validation,
/// 3 SOAP fault, 4 transport failure, 5 port in use.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soapforge::cli

#ifndef ATOMLIGHT_CLI_HPP
#define ATOMLIGHT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace atomlight {

/// Dispatches one CLI invocation. Returns 0 on success, 2 on usage
/// error (message on `err`), 1 on computation error. All numeric output
/// is locale-independent.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace atomlight

#endif

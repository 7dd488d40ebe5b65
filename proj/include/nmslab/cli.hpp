#pragma once

#include <string>
#include <vector>

namespace nmslab {

// Command-line front end. `args` excludes the program name. Returns the
// process exit code: 0 success, 2 configuration or validation error, 3
// threshold or instability, 4 numerical failure.
int run_cli(const std::vector<std::string>& args);

// Text of a bundled figure config ("fig2".."fig6"); empty if unknown. The
// same bytes ship as configs/paper_figN.cfg for direct use.
std::string builtin_config(const std::string& name);

}  // namespace nmslab

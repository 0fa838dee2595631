#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kolchin::cli {

enum ExitCode : int { Ok = 0, DomainFailure = 1, UsageFailure = 2, ResourceFailure = 3 };

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`; in json mode `out` receives exactly one document,
/// errors included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kolchin::cli

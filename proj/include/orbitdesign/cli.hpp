#pragma once

#include <cstdint>
#include <string>

// Command-line front end. Subcommands:
//   analyze      decompose a group file into isotypic components
//   verify       run the moment and classification checks on (group, vector)
//   construct    build a 2-design orbit vector and emit its orbit
//   schur-check  verify coefficient orthogonality per component
//   export       dump group elements (JSON) or an orbit point set (CSV)
//
// Exit codes: 0 success/pass, 1 the mathematics says no (not a design,
// infeasible multiplicity), 2 usage or parse error, 3 numerical failure
// (order cap, degenerate split, structure map trouble).

namespace orbitdesign::cli {

struct RunConfig {
    double tol = 1e-9;
    std::size_t max_order = 100000;
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string format = "json";  // json or csv
    std::string output;           // write primary payload here instead of stdout
};

int run(int argc, const char* const* argv);

}  // namespace orbitdesign::cli

// Group-file and vector parsing, number formatting for reports, and the
// stderr logger controlled by ORBIT_DESIGNS_LOG.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbitdesign/group.hpp"

namespace orbitdesign::io {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Group file schema: { "dim": n, "tol": t, "generators": [ [[row],[row],...], ... ] }.
// Matrix entries are JSON numbers or strings "p/q" parsed as rationals.
group::GeneratorSet load_group_file(const std::string& path);
group::GeneratorSet parse_group_json(const std::string& text, const std::string& origin);

// Vector given either as an inline JSON array "[x1, x2, ...]" or as a path
// to a file containing one.
Eigen::VectorXd parse_vector_inline(const std::string& text);
Eigen::VectorXd load_vector_file(const std::string& path);

// Plain decimal with 17 significant digits; doubles survive a round trip.
std::string format_double(double x);

// CSV with header x1,...,xn, one point per row.
std::string points_to_csv(const std::vector<Eigen::VectorXd>& points);

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Level read once from ORBIT_DESIGNS_LOG (error|warn|info|debug); default warn.
LogLevel log_level();
void log(LogLevel level, const std::string& message);

}  // namespace orbitdesign::io

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace perigeo {

// Dimension is a runtime value in {1,2,3}; the max-size template arguments
// keep every vector and matrix on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using IVec = Eigen::Matrix<long, Eigen::Dynamic, 1, 0, 3, 1>;

inline constexpr int kMaxDim = 3;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input data (bad cell, bad motif, malformed file).
class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& msg, int line)
        : DataError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Numerical thresholds shared by all modules.
///
/// `match_rel` scales with the cluster radius: two points match when they are
/// within `match_rel * alpha`. `dist_rel` scales with the cell diameter and is
/// used for ball membership and deduplication of candidate radii.
struct Tolerances {
    double match_rel = 1e-6;
    double ortho = 1e-9;
    double dist_rel = 1e-9;
    double coincide = 1e-8;
    double degenerate = 1e-12;

    /// Defaults, with `match_rel` overridden by the PERIGEO_TOL environment
    /// variable when it is set to a positive number.
    static Tolerances from_env();
};

}  // namespace perigeo

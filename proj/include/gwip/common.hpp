#pragma once

#include <stdexcept>
#include <string>

namespace gwip {

// File and image I/O failures (CLI exit code 1).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver non-convergence and other numerical breakdowns (CLI exit code 3).
// Parameter violations use std::invalid_argument (CLI exit code 2).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gwip

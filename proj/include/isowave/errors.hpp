#pragma once

#include <stdexcept>
#include <string>

namespace isowave {

// File could not be opened, read, written, or parsed at the byte level.
// The CLI maps this to exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Data that parsed fine but contradicts itself or its manifest (wrong dims,
// missing coefficient file, tampered metadata). CLI exit code 4.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter violations use std::invalid_argument throughout; the CLI maps it
// to exit code 3.

}  // namespace isowave

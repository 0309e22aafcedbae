#pragma once

#include <stdexcept>

namespace frobsum {

// A request exceeded the configured sieve capacity.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument fell outside a table or precondition range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A cache file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace frobsum

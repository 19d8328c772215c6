#pragma once

#include <stdexcept>
#include <string>

namespace ltlab {

// Precondition violations: bad parameters, malformed grids, unknown names.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A space grid that does not cover the data it is asked to hold.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

}  // namespace ltlab

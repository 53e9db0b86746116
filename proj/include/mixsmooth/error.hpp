#pragma once

#include <stdexcept>
#include <string>

namespace mixsmooth {

/// Parameter tuple or argument outside its admissible range.
class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested frequency support does not fit below the grid's Nyquist frequency,
/// or the grid needed to host it exceeds the point budget.
class NyquistError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed grid-function container.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares fit without enough points.
class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mixsmooth

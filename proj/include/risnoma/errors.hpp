#pragma once

#include <stdexcept>
#include <string>

namespace risnoma {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A requested quantity is not bracketed by the available data.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Invalid experiment or simulation configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical result too small or degenerate to be meaningful.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Detector called on an input for which no decision exists.
class DetectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace risnoma

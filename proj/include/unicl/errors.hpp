#pragma once

#include <stdexcept>
#include <string>

namespace unicl {

/// A model was asked for a density it does not implement (e.g. a marginal
/// when only conditionals are specified).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weight scheme violates its invariants (negative weight, zero total,
/// index out of range for the dimension).
class InvalidWeightScheme : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An estimate was used on the sample half it was computed from.
class ProvenanceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Data admit no maximizer (e.g. a log-column is constant).
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number when known.
class DataFormatError : public std::runtime_error {
public:
    DataFormatError(const std::string& msg, long line = -1)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace unicl

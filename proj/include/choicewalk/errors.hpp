#pragma once

#include <stdexcept>
#include <string>

namespace choicewalk {

// Caller violated a documented precondition (bad arity, bad index, bad parameters).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Input exceeds what an exact (exponential) routine is allowed to handle.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An internal contract was broken at run time (policy picked a non-proposed bit,
// a contraction dropped a relevant coordinate, ...).
class IntegrityError : public std::logic_error {
public:
    explicit IntegrityError(const std::string& what) : std::logic_error(what) {}
};

// Reading or writing an output file failed; the message carries the OS error.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace choicewalk

#pragma once

#include <stdexcept>
#include <string>

namespace eegmi {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the MI filter leaves no surviving features; the pipeline
// cannot proceed past selection for that split.
class EmptySelectionError : public Error {
public:
    explicit EmptySelectionError(const std::string& msg) : Error(msg) {}
};

}  // namespace eegmi

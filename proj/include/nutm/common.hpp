#pragma once

#include <stdexcept>
#include <string>

namespace nutm {

// Base for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A microprogram step produced no product. Carries the step label so a
// caller can tell which reaction died without parsing the message.
class StepFailure : public Error {
public:
    StepFailure(std::string step_label, const std::string& msg)
        : Error(msg), label(std::move(step_label)) {}
    std::string label;
};

} // namespace nutm

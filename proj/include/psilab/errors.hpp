#pragma once

#include <stdexcept>
#include <string>

namespace psilab {

// Exit-code mapping used by the CLI: domain -> 2, resource -> 3, audit -> 4.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a zero scan or argument-principle audit cannot account for
// every zero (carries the offending interval in the message), and when a
// requested zero sum exceeds the cached scan height.
struct audit_error : std::runtime_error {
    explicit audit_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct insufficient_zeros_error : audit_error {
    explicit insufficient_zeros_error(const std::string& msg) : audit_error(msg) {}
};

} // namespace psilab

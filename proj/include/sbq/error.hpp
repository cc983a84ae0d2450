#pragma once

#include <stdexcept>
#include <string>

namespace sbq {

// Input outside an operation's documented domain.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a configured size or cost limit.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Level-cache I/O problems, with a machine-readable reason.
class cache_error : public std::runtime_error {
public:
    enum class reason { missing, corrupt, invariant };

    cache_error(reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
    reason why() const noexcept { return reason_; }

private:
    reason reason_;
};

// Integrand without a polynomial form or a monotone decomposition.
class unsupported_function_error : public std::runtime_error {
public:
    explicit unsupported_function_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sbq

#pragma once

#include <stdexcept>
#include <string>

namespace leafmass {

// Exit-code contract: domain errors map to 1, resource errors to 2,
// internal consistency failures to 3 (see tools/leafmass.cpp).

class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw domain_error(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw internal_error(what);
}

} // namespace leafmass

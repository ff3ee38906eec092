#ifndef TWL_ERRORS_HPP
#define TWL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twl {

// Malformed input files, bad vertex ids, invalid CLI arguments. Exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A search or generation budget was exhausted. Exit code 3.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A checked internal invariant failed; signals a bug, never a legal outcome.
class invariant_violation_error : public std::logic_error {
public:
    explicit invariant_violation_error(const std::string& what) : std::logic_error(what) {}
};

// A cell descriptor is inconsistent with the instance it is decoded against.
class descriptor_error : public std::runtime_error {
public:
    explicit descriptor_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace twl

#endif

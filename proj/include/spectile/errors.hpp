#pragma once

#include <stdexcept>
#include <string>

namespace spectile {

// Two operands were built over different moduli vectors.
class GroupMismatch : public std::invalid_argument {
public:
    explicit GroupMismatch(const std::string& what)
        : std::invalid_argument("group mismatch: " + what) {}
};

// |A| * |T| != |G| where a level-1 tiling comparison needs it.
class CardinalityMismatch : public std::invalid_argument {
public:
    explicit CardinalityMismatch(const std::string& what)
        : std::invalid_argument("cardinality mismatch: " + what) {}
};

class NotASubgroup : public std::invalid_argument {
public:
    explicit NotASubgroup(const std::string& what)
        : std::invalid_argument("not a subgroup: " + what) {}
};

// Raised by input parsers; the message carries the offending position.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spectile

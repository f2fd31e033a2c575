#pragma once

#include <stdexcept>
#include <string>

namespace drt {

enum class ErrorKind {
    Precondition,  // bad input, mismatched owners, unknown names
    Parse,         // spec-file syntax
    SearchCap,     // enumeration refused because the search space is too large
    Invariant,     // an internal certificate check failed
    Unsupported,   // outside the decidable fragment (e.g. splitting over some number fields)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::Precondition, what);
}

inline void invariant(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::Invariant, what);
}

}  // namespace drt

#pragma once

#include <stdexcept>
#include <string>

namespace nugg {

enum class Errc {
    invalid = 1,     // malformed arguments / configuration
    domain = 2,      // value outside the mathematical domain
    capability = 3,  // unsupported (space, method, ...) combination
    singular = 4,    // degree singularity (isolated node under inverse modulation)
    numeric = 5,     // iteration failed to converge, tolerance not reached
    io = 6,          // file read/write failure
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nugg

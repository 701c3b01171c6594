#pragma once

#include <stdexcept>
#include <string>

namespace dslit {

// Error categories; the C API maps these 1:1 onto dslit_status codes.
enum class Errc {
    invalid_argument = 1, // bad parameter or state invariant violated
    parse = 2,            // malformed config / CSV input
    domain = 3,           // physically meaningless request (annihilated state, no heralds, ...)
    no_convergence = 4,   // iterative solver hit its cap
    io = 5,               // file read/write failure
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace dslit

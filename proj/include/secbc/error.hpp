#pragma once

#include <stdexcept>
#include <string>

namespace secbc {

enum class Errc {
    ok = 0,
    invalid_argument = 1,
    resource = 2,
    parse = 3,
    validation = 4,
    encoder_failure = 5,
    internal = 6,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(Errc::invalid_argument, what);
}

}  // namespace secbc

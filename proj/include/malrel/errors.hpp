#pragma once

#include <stdexcept>
#include <string>

namespace malrel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (algebra files, relation literals, expression strings).
struct ParseError : Error {
    using Error::Error;
};

// A configured size cap was exceeded; the message reports the size reached.
struct CapError : Error {
    using Error::Error;
};

} // namespace malrel

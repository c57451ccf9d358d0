#ifndef ATOMLIGHT_ERRORS_HPP
#define ATOMLIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace atomlight {

struct UnknownLevel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace atomlight

#endif

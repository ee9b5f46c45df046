#pragma once

#include <stdexcept>
#include <string>

namespace paygmix::cli {

// Bad flag, bad config key or a value outside its domain. Exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --help was given; what() holds the help text. Exit code 0.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output target or fixture file could not be read or written. Exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace paygmix::cli

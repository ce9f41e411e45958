#ifndef ARRCOVER_ERRORS_HPP
#define ARRCOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arrcover {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (arrangement files, deck files, path strings).
class ParseError : public Error
{
public:
    using Error::Error;
};

/// An operation was called with arguments outside its domain.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// A structural check failed on data that should have satisfied it
/// (e.g. a diagram that is not functorial).
class VerificationError : public Error
{
public:
    using Error::Error;
};

}  // namespace arrcover

#endif

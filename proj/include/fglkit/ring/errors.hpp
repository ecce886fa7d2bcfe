#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fglkit {

// Root of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Operands built over different generator tables or coefficient domains,
// or a reference to a generator/axis that does not exist.
class StructuralError : public Error
{
public:
    using Error::Error;
};

// Mathematically undefined request (non-unit linear term, constant term in
// a substitution, non-prime modulus, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// A truncation is too small for the requested coefficient.
class BoundError : public Error
{
public:
    using Error::Error;
};

// Text could not be parsed. `offset` is the 1-based byte position at which
// the parser gave up; `expected` lists the tokens that would have been
// accepted there.
class ParseError : public Error
{
public:
    ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
        : Error(message), offset_(offset), expected_(std::move(expected))
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// A well-formed expression that cannot be evaluated (unknown generator,
// invalid operation index). `offset` is the 1-based position of the node.
class ExpressionError : public Error
{
public:
    ExpressionError(const std::string& message, std::size_t offset) : Error(message), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace fglkit

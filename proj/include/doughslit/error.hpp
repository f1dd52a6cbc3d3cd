#ifndef DOUGHSLIT_ERROR_HPP
#define DOUGHSLIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace doughslit {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or geometry violates its documented invariants.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The initial packet is too narrow for the grid to carry it.
class UnderResolution : public Error {
public:
    using Error::Error;
};

/// A profile or distribution carries no probability at all.
class EmptyProfile : public Error {
public:
    using Error::Error;
};

/// Iterative linear solve did not reach tolerance within the iteration cap.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, double residual, std::size_t iterations,
                  std::ptrdiff_t step_index = -1)
        : Error(what), residual_(residual), iterations_(iterations), step_index_(step_index) {}

    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }
    /// Index of the failing step inside `evolve`, or -1 for a bare `step` call.
    std::ptrdiff_t step_index() const noexcept { return step_index_; }

private:
    double residual_;
    std::size_t iterations_;
    std::ptrdiff_t step_index_;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Two peaks are required before spacing statistics exist.
class UndefinedSpacing : public Error {
public:
    using Error::Error;
};

}  // namespace doughslit

#endif  // DOUGHSLIT_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace gts {

// Broad failure classes. The CLI maps each one onto a process exit code.
enum class ErrorKind {
    input,        // malformed files, bad flags, parameters outside the domain
    convergence,  // optimizer ran out of iterations
    numerical,    // singular matrices, grids that do not resolve the law, overflow
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

// Parameter or argument outside the admissible domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::input, what) {}
};

// Argument sits on a pole of Gamma / digamma / trigamma.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class OverflowError : public NumericalError {
public:
    explicit OverflowError(const std::string& what) : NumericalError(what) {}
};

// The Fourier grid does not resolve the distribution (characteristic function
// not decayed at the frequency cut-off, or the x-range misses probability mass).
class GridError : public NumericalError {
public:
    explicit GridError(const std::string& what) : NumericalError(what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(ErrorKind::convergence, what) {}
};

}  // namespace gts

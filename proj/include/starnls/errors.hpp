#pragma once

#include <stdexcept>
#include <string>

namespace starnls {

/// Base class for rejected inputs: bad parameters, empty existence regions,
/// sector mismatches, grid misuse. CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameters outside the existence region of the requested profile family.
class ExistenceError : public ValidationError {
public:
    explicit ExistenceError(const std::string& msg) : ValidationError(msg) {}
};

/// Function does not belong to the declared symmetry sector, or an operator
/// was requested in a sector its profile does not live in.
class SectorError : public ValidationError {
public:
    explicit SectorError(const std::string& msg) : ValidationError(msg) {}
};

/// Mismatched or unusable grids (different spacing, too few nodes, ...).
class GridError : public ValidationError {
public:
    explicit GridError(const std::string& msg) : ValidationError(msg) {}
};

/// Scalar argument outside its admissible range (q < 1 in an L^q norm, ...).
class ParameterError : public ValidationError {
public:
    explicit ParameterError(const std::string& msg) : ValidationError(msg) {}
};

/// Resolvent evaluated at a pole of the vertex coefficient system.
class PoleError : public ValidationError {
public:
    explicit PoleError(const std::string& msg) : ValidationError(msg) {}
};

/// A numerical procedure failed to converge or a factorization broke down
/// after regularization. CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace starnls

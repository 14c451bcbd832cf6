#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrmetric {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionTooSmall : Error {
    std::size_t n_obs;
    explicit DimensionTooSmall(std::size_t n)
        : Error("need at least 2 observations, got " + std::to_string(n)), n_obs(n) {}
};

struct ZeroVarianceColumn : Error {
    std::size_t column;
    explicit ZeroVarianceColumn(std::size_t col)
        : Error("column " + std::to_string(col) + " has zero sample variance"), column(col) {}
};

struct NotSquare : Error {
    std::size_t rows, cols;
    NotSquare(std::size_t r, std::size_t c)
        : Error("matrix is not square: " + std::to_string(r) + "x" + std::to_string(c)),
          rows(r), cols(c) {}
};

struct AsymmetryExceeded : Error {
    double max_delta;
    explicit AsymmetryExceeded(double delta)
        : Error("matrix asymmetry " + std::to_string(delta) + " exceeds tolerance"),
          max_delta(delta) {}
};

struct DiagonalNotUnit : Error {
    std::size_t index;
    explicit DiagonalNotUnit(std::size_t i)
        : Error("diagonal entry " + std::to_string(i) + " is not 1"), index(i) {}
};

struct EntryOutOfRange : Error {
    std::size_t i, j;
    double value;
    EntryOutOfRange(std::size_t i_, std::size_t j_, double v)
        : Error("entry (" + std::to_string(i_) + "," + std::to_string(j_) + ") = " +
                std::to_string(v) + " is outside [-1,1]"),
          i(i_), j(j_), value(v) {}
};

struct DomainExceeded : Error {
    std::size_t i, j;
    double value;
    DomainExceeded(std::size_t i_, std::size_t j_, double v)
        : Error("entry (" + std::to_string(i_) + "," + std::to_string(j_) + ") = " +
                std::to_string(v) + " is outside the transform domain"),
          i(i_), j(j_), value(v) {}
};

struct GridTooSmall : Error {
    std::size_t size, required;
    GridTooSmall(std::size_t got, std::size_t need)
        : Error("grid has " + std::to_string(got) + " points, need at least " +
                std::to_string(need)),
          size(got), required(need) {}
};

struct ThetaOutOfRange : Error {
    double theta;
    explicit ThetaOutOfRange(double t)
        : Error("theta = " + std::to_string(t) + " is outside (0, pi/2)"), theta(t) {}
};

struct TooFewVariables : Error {
    std::size_t n, required;
    TooFewVariables(std::size_t got, std::size_t need)
        : Error("need at least " + std::to_string(need) + " variables, got " +
                std::to_string(got)),
          n(got), required(need) {}
};

struct KOutOfRange : Error {
    std::size_t k, n;
    KOutOfRange(std::size_t k_, std::size_t n_)
        : Error("k = " + std::to_string(k_) + " is outside [1, " + std::to_string(n_) + "]"),
          k(k_), n(n_) {}
};

// Parse failure in a delimited text file; row/column are 1-based.
struct ParseError : Error {
    std::string path;
    std::size_t row, column;
    ParseError(std::string p, std::size_t r, std::size_t c, const std::string& what)
        : Error(p + ":" + std::to_string(r) + ":" + std::to_string(c) + ": " + what),
          path(std::move(p)), row(r), column(c) {}
};

}  // namespace corrmetric

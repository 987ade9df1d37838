#pragma once

#include <stdexcept>
#include <string>

namespace timemap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedTimestamp : Error {
    explicit MalformedTimestamp(std::size_t row, const std::string& value)
        : Error("malformed timestamp at row " + std::to_string(row) + ": '" + value + "'"),
          row(row) {}
    std::size_t row;
};

struct MissingField : Error {
    explicit MissingField(std::size_t row, const std::string& field)
        : Error("missing field '" + field + "' at row " + std::to_string(row)), row(row) {}
    std::size_t row;
};

struct SampleTooLarge : Error {
    SampleTooLarge(std::size_t n, std::size_t len)
        : Error("sample size " + std::to_string(n) + " exceeds stream length " +
                std::to_string(len)) {}
};

struct InvalidN : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct EmptyRange : Error {
    using Error::Error;
};

struct InvalidKernel : Error {
    using Error::Error;
};

struct EmptyGrid : Error {
    using Error::Error;
};

struct NonpositivePoint : Error {
    using Error::Error;
};

struct DegenerateSeries : Error {
    using Error::Error;
};

struct InvalidRule : Error {
    using Error::Error;
};

struct LayoutOverflow : Error {
    using Error::Error;
};

}  // namespace timemap

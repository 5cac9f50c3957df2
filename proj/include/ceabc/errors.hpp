#pragma once

#include <stdexcept>
#include <string>

namespace ceabc {

// Base class for every failure this library raises on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- simulation ---
struct NonpositivePopulation : Error {
    explicit NonpositivePopulation(const std::string& msg) : Error(msg) {}
};
struct IntegrationBlowup : Error {
    explicit IntegrationBlowup(const std::string& msg) : Error(msg) {}
};

// --- misfit ---
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};
struct ZeroDataNorm : Error {
    explicit ZeroDataNorm(const std::string& msg) : Error(msg) {}
};

// --- sampling ---
struct TruncationTooTight : Error {
    explicit TruncationTooTight(const std::string& msg) : Error(msg) {}
};
struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& msg) : Error(msg) {}
};

// --- optimization / inference ---
struct EmptyElite : Error {
    explicit EmptyElite(const std::string& msg) : Error(msg) {}
};
struct AllSamplesFailed : Error {
    explicit AllSamplesFailed(const std::string& msg) : Error(msg) {}
};
struct NoAcceptedSamples : Error {
    explicit NoAcceptedSamples(const std::string& msg) : Error(msg) {}
};

// --- initial-condition blending ---
struct WeightSumInvalid : Error {
    explicit WeightSumInvalid(const std::string& msg) : Error(msg) {}
};

// --- data ingestion ---
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};
struct ParseError : DataError {
    explicit ParseError(const std::string& msg) : DataError(msg) {}
};
struct InvariantViolation : DataError {
    explicit InvariantViolation(const std::string& msg) : DataError(msg) {}
};
struct GapInDates : DataError {
    explicit GapInDates(const std::string& msg) : DataError(msg) {}
};
struct OutOfRange : DataError {
    explicit OutOfRange(const std::string& msg) : DataError(msg) {}
};

// --- configuration ---
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace ceabc

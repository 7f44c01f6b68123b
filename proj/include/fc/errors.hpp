#pragma once

#include <stdexcept>
#include <string>

namespace fc {

struct DegreeOverflow : std::runtime_error {
    explicit DegreeOverflow(const std::string& m) : std::runtime_error("DegreeOverflow: " + m) {}
};

struct FrameMismatch : std::runtime_error {
    explicit FrameMismatch(const std::string& m) : std::runtime_error("FrameMismatch: " + m) {}
};

struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& m) : std::runtime_error("LengthMismatch: " + m) {}
};

struct SignatureError : std::runtime_error {
    explicit SignatureError(const std::string& m) : std::runtime_error("SignatureError: " + m) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& m) : std::runtime_error("ShapeError: " + m) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error("ParseError: " + m) {}
};

struct NotIntegrable : std::runtime_error {
    explicit NotIntegrable(const std::string& m) : std::runtime_error("NotIntegrable: " + m) {}
};

struct FrameNotUnimodular : std::runtime_error {
    explicit FrameNotUnimodular(const std::string& m)
        : std::runtime_error("FrameNotUnimodular: " + m) {}
};

struct MissingTheta : std::runtime_error {
    explicit MissingTheta(const std::string& m) : std::runtime_error("MissingTheta: " + m) {}
};

struct RoutesDisagree : std::runtime_error {
    explicit RoutesDisagree(const std::string& m) : std::runtime_error("RoutesDisagree: " + m) {}
};

}  // namespace fc

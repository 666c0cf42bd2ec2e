#pragma once

#include <stdexcept>
#include <string>

namespace coopnet {

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct KTooLarge : std::runtime_error {
    explicit KTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateGame : std::runtime_error {
    explicit DegenerateGame(const std::string& what) : std::runtime_error(what) {}
};

struct RhoOutOfRange : std::runtime_error {
    explicit RhoOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDecoder : std::runtime_error {
    explicit InvalidDecoder(const std::string& what) : std::runtime_error(what) {}
};

struct NoValidDecoder : std::runtime_error {
    explicit NoValidDecoder(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coopnet

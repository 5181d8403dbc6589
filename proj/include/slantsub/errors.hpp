#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slantsub {

/// Error with a stable machine-readable code ("RankDeficient", "NotSlant", ...).
/// Codes are what reports and exit-code mapping key on; the what() text is for humans.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, code + ": " + message);
}

/// Expression parse error; carries the byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& expected)
        : Error("SyntaxError",
                "SyntaxError at offset " + std::to_string(offset) + ": expected " + expected),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace slantsub

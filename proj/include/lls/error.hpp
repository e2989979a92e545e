#pragma once

#include <stdexcept>
#include <string>

namespace lls {

/// Failure with a stable machine-readable code, e.g. "below-theorem-threshold".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code))
    {
    }

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace lls

#pragma once

#include <stdexcept>
#include <string>

namespace ktame {

/// Domain error carrying a stable machine-readable name (e.g. "NotPrime").
class Error : public std::invalid_argument
{
public:
    Error(std::string name, const std::string & message)
        : std::invalid_argument(message), name_(std::move(name))
    {
    }

    const std::string & name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(std::string name, const std::string & message)
{
    throw Error(std::move(name), message);
}

} // namespace ktame

#ifndef CONETREE_ERRORS_HPP
#define CONETREE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace conetree {

// All recoverable failures carry a stable machine-readable kind
// ("UnknownVertex", "DisconnectedGraph", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
    throw Error(std::move(kind), message);
}

} // namespace conetree

#endif

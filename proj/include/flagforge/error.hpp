#ifndef FLAGFORGE_ERROR_HPP
#define FLAGFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flagforge {

// All domain failures carry a stable machine-readable kind, e.g. "HomogeneityViolation".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void require(bool ok, const char* kind, const std::string& msg) {
    if (!ok) fail(kind, msg);
}

} // namespace flagforge

#endif

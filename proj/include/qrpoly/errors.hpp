#ifndef QRPOLY_ERRORS_HPP
#define QRPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qrpoly {

/** Raised when a caller violates a documented precondition. */
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * Raised when an internal algebraic invariant fails to hold.  This never
 * signals bad input: it means an arithmetic bug (or a falsified identity)
 * and should be treated as a release blocker.
 */
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

/** Raised when a bounded search exhausts its cap without finding a hit. */
struct search_cap_error : std::runtime_error {
    explicit search_cap_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qrpoly

#endif // QRPOLY_ERRORS_HPP

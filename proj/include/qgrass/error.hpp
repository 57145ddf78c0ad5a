#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgrass {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inverting an exact zero.
class division_by_zero : public error {
public:
    using error::error;
};

/// A construction that needs invertible [n]_q hit [k/2]_q = 0 (even k >= 4).
class degenerate_parameter : public error {
public:
    using error::error;
};

/// Sum of RadicalScalars whose radical monomials differ (and neither side is zero).
class incompatible_radicals : public error {
public:
    using error::error;
};

/// The q-difference quotient was requested at k = 2, where q - qbar = 0.
class degenerate_denominator : public error {
public:
    using error::error;
};

/// Two values from different QContexts were combined.
class context_mismatch : public error {
public:
    using error::error;
};

/// An exponent exceeded the parser's 10^6 bound.
class exponent_overflow : public error {
public:
    using error::error;
};

/// Parse failure carrying the source position and the tokens that were acceptable there.
class syntax_error : public error {
public:
    syntax_error(const std::string& what, int line, int column, std::vector<std::string> expected)
        : error(render(what, line, column, expected)),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string render(const std::string& what, int line, int column,
                              const std::vector<std::string>& expected) {
        std::ostringstream os;
        os << what << " at " << line << ":" << column;
        if (!expected.empty()) {
            os << " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) os << ", ";
                os << expected[i];
            }
            os << ")";
        }
        return os.str();
    }

    int line_;
    int column_;
    std::vector<std::string> expected_;
};

}  // namespace qgrass

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace psc {

// Half-open byte range in a source buffer, plus 1-based line/column of its
// first byte. A zero-length span marks a point (e.g. end of input).
struct SourceSpan {
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::size_t offset = 0;
    std::size_t length = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Diagnostics are values, not exceptions: analyses return every violation
// they find. `code` is a stable identifier from the documented set in
// docs/diagnostics.md; `message` is for humans.
struct Diagnostic {
    std::string code;
    std::string message;
    SourceSpan span;
};

// Renders "file:line:col: code: message".
std::string render_diagnostic(const Diagnostic& d, const std::string& file);

std::string render_diagnostics(const std::vector<Diagnostic>& ds, const std::string& file);

}  // namespace psc

#include <sstream>

#include "psc/source_span.hpp"

namespace psc {

std::string render_diagnostic(const Diagnostic& d, const std::string& file) {
    std::ostringstream out;
    out << file << ":" << d.span.line << ":" << d.span.column << ": " << d.code << ": "
        << d.message;
    return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& ds, const std::string& file) {
    std::string out;
    for (const Diagnostic& d : ds) {
        out += render_diagnostic(d, file);
        out += "\n";
    }
    return out;
}

}  // namespace psc

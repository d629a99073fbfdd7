#ifndef WCAUSAL_SOURCE_HPP
#define WCAUSAL_SOURCE_HPP

#include <string>
#include <vector>

namespace wcausal {

// Half-open region of an input file; columns are 1-based.
struct SourceSpan {
    std::string file;
    int line = 0;
    int column = 0;
    int end_line = 0;
    int end_column = 0;

    std::string str() const;
};

struct Diagnostic {
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected;  // expected-token set, for parse errors

    std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

std::string format_diagnostics(const Diagnostics& diags);

}  // namespace wcausal

#endif

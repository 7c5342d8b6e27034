#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scbench::csv {

/// Split one CSV record (RFC-4180 quoting, no embedded newlines).
/// Returns false when a quoted field is left unterminated.
bool split(std::string_view line, std::vector<std::string>& fields);

/// Quote a field when it contains a comma, quote, or line break.
std::string quote(std::string_view field);

/// Join fields into a record without the trailing newline.
std::string join(const std::vector<std::string>& fields);

}  // namespace scbench::csv

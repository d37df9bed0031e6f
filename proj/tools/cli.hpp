#pragma once

#include <iosfwd>

namespace bispectral::cli {

// Exit codes: 0 success (solve: nonconstant witness found), 1 validation error,
// 2 parse error, 3 only constant solutions, 4 Grassmannian plane rejected.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bispectral::cli

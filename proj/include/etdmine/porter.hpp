#pragma once

#include <string>
#include <string_view>

namespace etdmine {

/// Porter (1980) suffix-stripping stemmer, following the author's reference C
/// implementation. Expects a lowercase word; words containing non-ASCII bytes
/// are returned unchanged, as are words of one or two characters.
std::string porter_stem(std::string_view word);

}  // namespace etdmine

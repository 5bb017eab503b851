#pragma once

#include <string>
#include <string_view>

namespace tfmn {

enum class Language { italian, english };

Language parse_language(std::string_view name);
const char* language_name(Language lang);

// Snowball suffix stripping. Unknown words pass through lowercased; the
// result is lowercase and stable under repeated application for ordinary
// corpus vocabulary.
std::string stem(std::string_view word, Language lang);

// Bundled stopword membership test (lowercase surface forms).
bool is_stopword(std::string_view word, Language lang);

}  // namespace tfmn

#ifndef TFMN_TEXTUTIL_HPP
#define TFMN_TEXTUTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tfmn {

// Decodes UTF-8 into code points; invalid bytes decode as U+FFFD.
std::vector<uint32_t> utf8_decode(std::string_view s);

std::string utf8_encode(const std::vector<uint32_t>& cps);

// ASCII + Latin-1 letter fold; other code points pass through.
uint32_t fold_lower(uint32_t cp);

bool is_letter(uint32_t cp);

// Lowercased letter runs; digits and punctuation act as separators and never
// appear in the output.
std::vector<std::string> tokenize(std::string_view text);

// Sentence split on terminal punctuation (. ! ? and the ellipsis), then
// tokenized per sentence. Sentences with no tokens are dropped.
std::vector<std::vector<std::string>> split_sentences(std::string_view text);

}  // namespace tfmn

#endif

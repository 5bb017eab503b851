#include "tfmn/textutil.hpp"

namespace tfmn {

std::vector<uint32_t> utf8_decode(std::string_view s) {
    std::vector<uint32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        uint32_t cp = 0xFFFD;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1Fu;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0Fu;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07u;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (len > 1) {
            if (i + len > s.size()) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
            bool ok = true;
            for (size_t k = 1; k < len; ++k) {
                const unsigned char b = static_cast<unsigned char>(s[i + k]);
                if ((b & 0xC0) != 0x80) {
                    ok = false;
                    break;
                }
                cp = (cp << 6) | (b & 0x3Fu);
            }
            if (!ok) {
                out.push_back(0xFFFD);
                ++i;
                continue;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::vector<uint32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (uint32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

uint32_t fold_lower(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    // Latin-1 supplement, skipping the multiplication sign.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
}

bool is_letter(uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
    // Latin Extended-A covers the rest of the accented range used in European
    // news text.
    if (cp >= 0x100 && cp <= 0x17F) return true;
    return false;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::vector<uint32_t> current;
    const auto cps = utf8_decode(text);
    for (uint32_t cp : cps) {
        if (is_letter(cp)) {
            current.push_back(fold_lower(cp));
        } else if (!current.empty()) {
            tokens.push_back(utf8_encode(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(utf8_encode(current));
    return tokens;
}

std::vector<std::vector<std::string>> split_sentences(std::string_view text) {
    std::vector<std::vector<std::string>> sentences;
    const auto cps = utf8_decode(text);
    std::vector<uint32_t> current;
    const auto flush = [&] {
        if (current.empty()) return;
        auto tokens = tokenize(utf8_encode(current));
        if (!tokens.empty()) sentences.push_back(std::move(tokens));
        current.clear();
    };
    for (uint32_t cp : cps) {
        if (cp == '.' || cp == '!' || cp == '?' || cp == 0x2026) {
            flush();
        } else {
            current.push_back(cp);
        }
    }
    flush();
    return sentences;
}

}  // namespace tfmn

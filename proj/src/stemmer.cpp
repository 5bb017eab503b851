#include "tfmn/stemmer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "tfmn/core.hpp"
#include "tfmn/textutil.hpp"

namespace tfmn {

Language parse_language(std::string_view name) {
    if (name == "italian" || name == "it") return Language::italian;
    if (name == "english" || name == "en") return Language::english;
    throw ValidationError("unknown language: " + std::string(name));
}

const char* language_name(Language lang) {
    return lang == Language::italian ? "italian" : "english";
}

namespace {

using W = std::vector<uint32_t>;

bool ends_with(const W& w, const W& suf) {
    return suf.size() <= w.size() &&
           std::equal(suf.begin(), suf.end(), w.end() - static_cast<long>(suf.size()));
}

// First position i > from with non-vowel at i and vowel at i-1; region starts
// after that pair. Used for R1/R2 in both languages.
template <typename IsVowel>
size_t region_after_vowel_nonvowel(const W& w, size_t from, IsVowel v) {
    for (size_t i = from + 1; i < w.size(); ++i) {
        if (!v(w[i]) && v(w[i - 1])) return i + 1;
    }
    return w.size();
}

// ---------------------------------------------------------------- Italian --

constexpr uint32_t kAg = 0xE0, kEg = 0xE8, kIg = 0xEC, kOg = 0xF2, kUg = 0xF9;
constexpr uint32_t kAa = 0xE1, kEa = 0xE9, kIa = 0xED, kOa = 0xF3, kUa = 0xFA;

bool it_vowel(uint32_t c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
        case kAg: case kEg: case kIg: case kOg: case kUg:
            return true;
        default:
            return false;
    }
}

W u32(const char* s) { return utf8_decode(s); }

void it_prelude(W& w) {
    for (size_t i = 0; i < w.size(); ++i) {
        switch (w[i]) {
            case kAa: w[i] = kAg; break;
            case kEa: w[i] = kEg; break;
            case kIa: w[i] = kIg; break;
            case kOa: w[i] = kOg; break;
            case kUa: w[i] = kUg; break;
            case 'u':
                if (i > 0 && w[i - 1] == 'q') w[i] = 'U';
                break;
            default: break;
        }
    }
    for (size_t i = 1; i + 1 < w.size(); ++i) {
        if ((w[i] == 'u' || w[i] == 'i') && it_vowel(w[i - 1]) && it_vowel(w[i + 1])) {
            w[i] = w[i] == 'u' ? 'U' : 'I';
        }
    }
}

size_t it_rv(const W& w) {
    const size_t n = w.size();
    if (n < 2) return n;
    if (!it_vowel(w[1])) {
        for (size_t i = 2; i < n; ++i) {
            if (it_vowel(w[i])) return i + 1;
        }
        return n;
    }
    if (it_vowel(w[0])) {
        for (size_t i = 2; i < n; ++i) {
            if (!it_vowel(w[i])) return i + 1;
        }
        return n;
    }
    return std::min<size_t>(3, n);
}

// Attached pronoun: longest pronoun suffix preceded (inside RV) by
// ando/endo (drop pronoun) or ar/er/ir (pronoun becomes "e").
bool it_attached_pronoun(W& w, size_t rv) {
    static const std::vector<W> pronouns = [] {
        const char* raw[] = {
            "ci", "gli", "la", "le", "li", "lo", "mi", "ne", "si", "ti", "vi",
            "sene", "gliela", "gliele", "glieli", "glielo", "gliene",
            "mela", "mele", "meli", "melo", "mene",
            "tela", "tele", "teli", "telo", "tene",
            "cela", "cele", "celi", "celo", "cene",
            "vela", "vele", "veli", "velo", "vene"};
        std::vector<W> out;
        for (const char* s : raw) out.push_back(u32(s));
        return out;
    }();
    size_t best = 0;
    for (const W& p : pronouns) {
        if (p.size() > best && ends_with(w, p)) best = p.size();
    }
    if (best == 0) return false;
    const size_t cut = w.size() - best;
    const auto precedes = [&](const char* s) {
        const W suf = u32(s);
        if (cut < suf.size() || cut - suf.size() < rv) return false;
        return std::equal(suf.begin(), suf.end(),
                          w.begin() + static_cast<long>(cut - suf.size()));
    };
    if (precedes("ando") || precedes("endo")) {
        w.resize(cut);
        return true;
    }
    if (precedes("ar") || precedes("er") || precedes("ir")) {
        w.resize(cut);
        w.push_back('e');
        return true;
    }
    return false;
}

enum class ItGroup { r2_del, azione, logia, uzione, enza, amento, amente, ita, ivo };

struct ItSuffix {
    W text;
    ItGroup group;
};

const std::vector<ItSuffix>& it_step1_table() {
    static const std::vector<ItSuffix> table = [] {
        std::vector<ItSuffix> t;
        const auto add = [&](const char* s, ItGroup g) { t.push_back({u32(s), g}); };
        for (const char* s : {"anza", "anze", "ico", "ici", "ica", "ice", "iche",
                              "ichi", "ismo", "ismi", "abile", "abili", "ibile",
                              "ibili", "ista", "iste", "isti", "ist\xc3\xa0",
                              "ist\xc3\xa8", "ist\xc3\xac", "oso", "osi", "osa",
                              "ose", "mente", "atrice", "atrici", "ante", "anti"}) {
            add(s, ItGroup::r2_del);
        }
        for (const char* s : {"azione", "azioni", "atore", "atori"}) add(s, ItGroup::azione);
        for (const char* s : {"logia", "logie"}) add(s, ItGroup::logia);
        for (const char* s : {"uzione", "uzioni", "usione", "usioni"}) add(s, ItGroup::uzione);
        for (const char* s : {"enza", "enze"}) add(s, ItGroup::enza);
        for (const char* s : {"amento", "amenti", "imento", "imenti"}) add(s, ItGroup::amento);
        add("amente", ItGroup::amente);
        add("it\xc3\xa0", ItGroup::ita);
        for (const char* s : {"ivo", "ivi", "iva", "ive"}) add(s, ItGroup::ivo);
        return t;
    }();
    return table;
}

bool it_standard_suffix(W& w, size_t r1, size_t r2, size_t rv) {
    const ItSuffix* hit = nullptr;
    for (const ItSuffix& s : it_step1_table()) {
        if ((hit == nullptr || s.text.size() > hit->text.size()) && ends_with(w, s.text)) {
            hit = &s;
        }
    }
    if (hit == nullptr) return false;
    const size_t len = hit->text.size();
    const auto fits = [&](size_t l, size_t region) {
        return w.size() >= l && w.size() - l >= region;
    };
    const auto drop_if = [&](const char* s, size_t region) {
        const W suf = u32(s);
        if (ends_with(w, suf) && fits(suf.size(), region)) {
            w.resize(w.size() - suf.size());
            return true;
        }
        return false;
    };
    switch (hit->group) {
        case ItGroup::r2_del:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            return true;
        case ItGroup::azione:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            drop_if("ic", r2);
            return true;
        case ItGroup::logia:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            for (uint32_t c : {'l', 'o', 'g'}) w.push_back(c);
            return true;
        case ItGroup::uzione:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            w.push_back('u');
            return true;
        case ItGroup::enza:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            for (uint32_t c : {'e', 'n', 't', 'e'}) w.push_back(c);
            return true;
        case ItGroup::amento:
            if (!fits(len, rv)) return false;
            w.resize(w.size() - len);
            return true;
        case ItGroup::amente:
            if (!fits(len, r1)) return false;
            w.resize(w.size() - len);
            if (drop_if("iv", r2)) {
                drop_if("at", r2);
            } else if (!drop_if("abil", r2) && !drop_if("os", r2)) {
                drop_if("ic", r2);
            }
            return true;
        case ItGroup::ita:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            if (!drop_if("abil", r2) && !drop_if("ic", r2)) drop_if("iv", r2);
            return true;
        case ItGroup::ivo:
            if (!fits(len, r2)) return false;
            w.resize(w.size() - len);
            if (drop_if("at", r2)) drop_if("ic", r2);
            return true;
    }
    return false;
}

// Verb suffixes are matched entirely inside RV: the longest listed suffix
// that both matches and fits after the RV boundary is deleted.
bool it_verb_suffix(W& w, size_t rv) {
    static const std::vector<W> table = [] {
        const char* raw[] = {
            "ammo", "ando", "ano", "are", "arono", "asse", "assero", "assi",
            "assimo", "ata", "ate", "ati", "ato", "ava", "avamo", "avano",
            "avate", "avi", "avo", "emmo", "enda", "ende", "endi", "endo",
            "er\xc3\xa0", "erai", "eranno", "ere", "erebbe", "erebbero",
            "erei", "eremmo", "eremo", "ereste", "eresti", "erete",
            "er\xc3\xb2", "erono", "essero", "ete", "eva", "evamo", "evano",
            "evate", "evi", "evo", "Iamo", "iamo", "immo", "ir\xc3\xa0",
            "irai", "iranno", "ire", "irebbe", "irebbero", "irei", "iremmo",
            "iremo", "ireste", "iresti", "irete", "ir\xc3\xb2", "irono",
            "isca", "iscano", "isce", "isci", "isco", "iscono", "issero",
            "ita", "ite", "iti", "ito", "iva", "ivamo", "ivano", "ivate",
            "ivi", "ivo", "ono", "uta", "ute", "uti", "uto", "ar", "ir"};
        std::vector<W> out;
        for (const char* s : raw) out.push_back(u32(s));
        return out;
    }();
    size_t best = 0;
    for (const W& s : table) {
        if (s.size() > best && s.size() <= w.size() - std::min(rv, w.size()) &&
            ends_with(w, s)) {
            best = s.size();
        }
    }
    if (best == 0) return false;
    w.resize(w.size() - best);
    return true;
}

void it_vowel_suffix(W& w, size_t rv) {
    if (!w.empty()) {
        const uint32_t c = w.back();
        const bool final_vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' ||
                                 c == kAg || c == kEg || c == kIg || c == kOg;
        if (final_vowel && w.size() - 1 >= rv) {
            w.pop_back();
            if (!w.empty() && w.back() == 'i' && w.size() - 1 >= rv) w.pop_back();
        }
    }
    if (w.size() >= 2 && w.size() - 2 >= rv && w.back() == 'h' &&
        (w[w.size() - 2] == 'c' || w[w.size() - 2] == 'g')) {
        w.pop_back();
    }
}

std::string italian_stem(const W& in) {
    W w = in;
    it_prelude(w);
    const size_t rv = it_rv(w);
    const size_t r1 = region_after_vowel_nonvowel(w, 0, it_vowel);
    const size_t r2 = region_after_vowel_nonvowel(w, r1, it_vowel);
    it_attached_pronoun(w, rv);
    if (!it_standard_suffix(w, r1, r2, rv)) it_verb_suffix(w, rv);
    it_vowel_suffix(w, rv);
    for (uint32_t& c : w) {
        if (c == 'I') c = 'i';
        if (c == 'U') c = 'u';
    }
    return utf8_encode(w);
}

// ---------------------------------------------------------------- English --

bool en_vowel(uint32_t c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool en_double(const W& w) {
    if (w.size() < 2) return false;
    const uint32_t c = w.back();
    if (c != w[w.size() - 2]) return false;
    switch (c) {
        case 'b': case 'd': case 'f': case 'g': case 'm':
        case 'n': case 'p': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

bool en_ends_short_syllable(const W& w) {
    const size_t n = w.size();
    if (n >= 3 && !en_vowel(w[n - 3]) && en_vowel(w[n - 2]) && !en_vowel(w[n - 1]) &&
        w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'Y') {
        return true;
    }
    return n == 2 && en_vowel(w[0]) && !en_vowel(w[1]);
}

bool en_contains_vowel(const W& w, size_t begin, size_t end) {
    for (size_t i = begin; i < end && i < w.size(); ++i) {
        if (en_vowel(w[i])) return true;
    }
    return false;
}

bool starts_with(const W& w, const char* s) {
    const W p = u32(s);
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

struct EnRule {
    W suffix;
    W replacement;
};

const EnRule* en_longest(const W& w, const std::vector<EnRule>& rules) {
    const EnRule* hit = nullptr;
    for (const EnRule& r : rules) {
        if ((hit == nullptr || r.suffix.size() > hit->suffix.size()) &&
            ends_with(w, r.suffix)) {
            hit = &r;
        }
    }
    return hit;
}

void en_apply(W& w, const EnRule& r) {
    w.resize(w.size() - r.suffix.size());
    w.insert(w.end(), r.replacement.begin(), r.replacement.end());
}

std::string english_stem(const W& in) {
    W w = in;
    while (!w.empty() && w.front() == '\'') w.erase(w.begin());
    if (w.size() <= 2) return utf8_encode(w);

    static const std::vector<EnRule> exceptions = [] {
        std::vector<EnRule> t;
        const auto add = [&](const char* a, const char* b) { t.push_back({u32(a), u32(b)}); };
        add("skis", "ski");
        add("skies", "sky");
        add("dying", "die");
        add("lying", "lie");
        add("tying", "tie");
        add("idly", "idl");
        add("gently", "gentl");
        add("ugly", "ugli");
        add("early", "earli");
        add("only", "onli");
        add("singly", "singl");
        for (const char* s : {"sky", "news", "howe", "atlas", "cosmos", "bias", "andes"}) {
            t.push_back({u32(s), u32(s)});
        }
        return t;
    }();
    for (const EnRule& e : exceptions) {
        if (w == e.suffix) return utf8_encode(e.replacement);
    }

    if (w[0] == 'y') w[0] = 'Y';
    for (size_t i = 1; i < w.size(); ++i) {
        if (w[i] == 'y' && en_vowel(w[i - 1])) w[i] = 'Y';
    }

    size_t r1;
    if (starts_with(w, "gener") || starts_with(w, "arsen")) {
        r1 = 5;
    } else if (starts_with(w, "commun")) {
        r1 = 6;
    } else {
        r1 = region_after_vowel_nonvowel(w, 0, en_vowel);
    }
    const size_t r2 = region_after_vowel_nonvowel(w, r1, en_vowel);
    const auto in_r1 = [&](size_t len) { return w.size() - len >= r1; };
    const auto in_r2 = [&](size_t len) { return w.size() - len >= r2; };
    const auto ends = [&](const char* s) { return ends_with(w, u32(s)); };

    // Step 0: possessive tails.
    for (const char* s : {"'s'", "'s", "'"}) {
        const W suf = u32(s);
        if (ends_with(w, suf)) {
            w.resize(w.size() - suf.size());
            break;
        }
    }

    // Step 1a.
    if (ends("sses")) {
        w.resize(w.size() - 2);
    } else if (ends("ied") || ends("ies")) {
        w.resize(w.size() - (w.size() > 4 ? 2 : 1));
    } else if (!ends("ss") && !ends("us") && ends("s")) {
        if (w.size() >= 3 && en_contains_vowel(w, 0, w.size() - 2)) w.pop_back();
    }

    static const std::vector<W> stop_after_1a = [] {
        std::vector<W> t;
        for (const char* s : {"inning", "outing", "canning", "herring", "earring",
                              "proceed", "exceed", "succeed"}) {
            t.push_back(u32(s));
        }
        return t;
    }();
    for (const W& s : stop_after_1a) {
        if (w == s) return utf8_encode(w);
    }

    // Step 1b.
    if (ends("eedly")) {
        if (in_r1(5)) w.resize(w.size() - 3);
    } else if (ends("eed")) {
        if (in_r1(3)) w.resize(w.size() - 1);
    } else {
        size_t len = 0;
        if (ends("ingly")) len = 5;
        else if (ends("edly")) len = 4;
        else if (ends("ing")) len = 3;
        else if (ends("ed")) len = 2;
        if (len > 0 && en_contains_vowel(w, 0, w.size() - len)) {
            w.resize(w.size() - len);
            if (ends("at") || ends("bl") || ends("iz")) {
                w.push_back('e');
            } else if (en_double(w)) {
                w.pop_back();
            } else if (r1 >= w.size() && en_ends_short_syllable(w)) {
                w.push_back('e');
            }
        }
    }

    // Step 1c.
    if (w.size() >= 3 && (w.back() == 'y' || w.back() == 'Y') &&
        !en_vowel(w[w.size() - 2])) {
        w.back() = 'i';
    }

    // Step 2.
    static const std::vector<EnRule> step2 = [] {
        std::vector<EnRule> t;
        const auto add = [&](const char* a, const char* b) { t.push_back({u32(a), u32(b)}); };
        add("ational", "ate");
        add("ization", "ize");
        add("fulness", "ful");
        add("ousness", "ous");
        add("iveness", "ive");
        add("tional", "tion");
        add("biliti", "ble");
        add("lessli", "less");
        add("entli", "ent");
        add("ation", "ate");
        add("alism", "al");
        add("aliti", "al");
        add("ousli", "ous");
        add("iviti", "ive");
        add("fulli", "ful");
        add("enci", "ence");
        add("anci", "ance");
        add("abli", "able");
        add("izer", "ize");
        add("ator", "ate");
        add("alli", "al");
        add("ogi", "og");
        add("bli", "ble");
        add("li", "");
        return t;
    }();
    if (const EnRule* hit = en_longest(w, step2)) {
        const size_t len = hit->suffix.size();
        if (in_r1(len)) {
            const bool is_ogi = hit->suffix == u32("ogi");
            const bool is_li = hit->suffix == u32("li");
            if (is_ogi) {
                if (w.size() >= 4 && w[w.size() - 4] == 'l') en_apply(w, *hit);
            } else if (is_li) {
                if (w.size() >= 3) {
                    const uint32_t c = w[w.size() - 3];
                    static constexpr const char kValid[] = "cdeghkmnrt";
                    for (const char* p = kValid; *p; ++p) {
                        if (c == static_cast<uint32_t>(*p)) {
                            w.resize(w.size() - 2);
                            break;
                        }
                    }
                }
            } else {
                en_apply(w, *hit);
            }
        }
    }

    // Step 3.
    static const std::vector<EnRule> step3 = [] {
        std::vector<EnRule> t;
        const auto add = [&](const char* a, const char* b) { t.push_back({u32(a), u32(b)}); };
        add("ational", "ate");
        add("tional", "tion");
        add("alize", "al");
        add("icate", "ic");
        add("iciti", "ic");
        add("ative", "");
        add("ical", "ic");
        add("ness", "");
        add("ful", "");
        return t;
    }();
    if (const EnRule* hit = en_longest(w, step3)) {
        const size_t len = hit->suffix.size();
        if (in_r1(len)) {
            if (hit->suffix == u32("ative")) {
                if (in_r2(len)) w.resize(w.size() - len);
            } else {
                en_apply(w, *hit);
            }
        }
    }

    // Step 4.
    static const std::vector<EnRule> step4 = [] {
        std::vector<EnRule> t;
        for (const char* s : {"ement", "ance", "ence", "able", "ible", "ment",
                              "ant", "ent", "ism", "ate", "iti", "ous", "ive",
                              "ize", "ion", "al", "er", "ic"}) {
            t.push_back({u32(s), W{}});
        }
        return t;
    }();
    if (const EnRule* hit = en_longest(w, step4)) {
        const size_t len = hit->suffix.size();
        if (in_r2(len)) {
            if (hit->suffix == u32("ion")) {
                if (w.size() >= 4 && (w[w.size() - 4] == 's' || w[w.size() - 4] == 't')) {
                    w.resize(w.size() - len);
                }
            } else {
                w.resize(w.size() - len);
            }
        }
    }

    // Step 5.
    if (!w.empty() && w.back() == 'e') {
        if (in_r2(1)) {
            w.pop_back();
        } else if (in_r1(1)) {
            W head(w.begin(), w.end() - 1);
            if (!en_ends_short_syllable(head)) w.pop_back();
        }
    } else if (w.size() >= 2 && w.back() == 'l' && w[w.size() - 2] == 'l' && in_r2(1)) {
        w.pop_back();
    }

    for (uint32_t& c : w) {
        if (c == 'Y') c = 'y';
    }
    return utf8_encode(w);
}

}  // namespace

std::string stem(std::string_view word, Language lang) {
    if (word.empty()) throw ValidationError("cannot stem an empty word");
    W w = utf8_decode(word);
    for (uint32_t& c : w) c = fold_lower(c);
    return lang == Language::italian ? italian_stem(w) : english_stem(w);
}

}  // namespace tfmn

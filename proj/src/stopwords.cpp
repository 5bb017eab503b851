#include <string_view>
#include <unordered_set>

#include "tfmn/stemmer.hpp"

namespace tfmn {
namespace {

// Function words only: articles, prepositions (incl. fused forms), pronouns,
// conjunctions, and the high-frequency auxiliaries essere/avere/fare/stare.
const std::unordered_set<std::string_view>& italian_stopwords() {
    static const std::unordered_set<std::string_view> set = {
        "ad", "al", "allo", "ai", "agli", "all", "agl", "alla", "alle", "con",
        "col", "coi", "da", "dal", "dallo", "dai", "dagli", "dall", "dagl",
        "dalla", "dalle", "di", "del", "dello", "dei", "degli", "dell", "degl",
        "della", "delle", "in", "nel", "nello", "nei", "negli", "nell", "negl",
        "nella", "nelle", "su", "sul", "sullo", "sui", "sugli", "sull", "sugl",
        "sulla", "sulle", "per", "tra", "fra", "contro", "io", "tu", "lui",
        "lei", "noi", "voi", "loro", "mio", "mia", "miei", "mie", "tuo", "tua",
        "tuoi", "tue", "suo", "sua", "suoi", "sue", "nostro", "nostra",
        "nostri", "nostre", "vostro", "vostra", "vostri", "vostre", "mi", "ti",
        "ci", "vi", "lo", "la", "li", "le", "gli", "ne", "il", "un", "uno",
        "una", "ma", "ed", "se", "perch\xc3\xa9", "anche", "come", "dov",
        "dove", "che", "chi", "cui", "non", "pi\xc3\xb9", "quale", "quanto",
        "quanti", "quanta", "quante", "quello", "quelli", "quella", "quelle",
        "questo", "questi", "questa", "queste", "si", "tutto", "tutti", "a",
        "c", "e", "i", "l", "o", "ho", "hai", "ha", "abbiamo", "avete",
        "hanno", "abbia", "abbiate", "abbiano", "avr\xc3\xb2", "avrai",
        "avr\xc3\xa0", "avremo", "avrete", "avranno", "avrei", "avresti",
        "avrebbe", "avremmo", "avreste", "avrebbero", "avevo", "avevi",
        "aveva", "avevamo", "avevate", "avevano", "ebbi", "avesti", "ebbe",
        "avemmo", "aveste", "ebbero", "avessi", "avesse", "avessimo",
        "avessero", "avendo", "avuto", "avuta", "avuti", "avute", "sono",
        "sei", "\xc3\xa8", "siamo", "siete", "sia", "siate", "siano",
        "sar\xc3\xb2", "sarai", "sar\xc3\xa0", "saremo", "sarete", "saranno",
        "sarei", "saresti", "sarebbe", "saremmo", "sareste", "sarebbero",
        "ero", "eri", "era", "eravamo", "eravate", "erano", "fui", "fosti",
        "fu", "fummo", "foste", "furono", "fossi", "fosse", "fossimo",
        "fossero", "essendo", "faccio", "fai", "facciamo", "fanno", "faccia",
        "facciate", "facciano", "far\xc3\xb2", "farai", "far\xc3\xa0",
        "faremo", "farete", "faranno", "farei", "faresti", "farebbe",
        "faremmo", "fareste", "farebbero", "facevo", "facevi", "faceva",
        "facevamo", "facevate", "facevano", "feci", "facesti", "fece",
        "facemmo", "faceste", "fecero", "facessi", "facesse", "facessimo",
        "facessero", "facendo", "sto", "stai", "sta", "stiamo", "stanno",
        "stia", "stiate", "stiano", "star\xc3\xb2", "starai", "star\xc3\xa0",
        "staremo", "starete", "staranno", "starei", "staresti", "starebbe",
        "staremmo", "stareste", "starebbero", "stavo", "stavi", "stava",
        "stavamo", "stavate", "stavano", "stetti", "stesti", "stette",
        "stemmo", "steste", "stettero", "stessi", "stesse", "stessimo",
        "stessero", "stando",
    };
    return set;
}

const std::unordered_set<std::string_view>& english_stopwords() {
    static const std::unordered_set<std::string_view> set = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
        "your", "yours", "yourself", "yourselves", "he", "him", "his",
        "himself", "she", "her", "hers", "herself", "it", "its", "itself",
        "they", "them", "their", "theirs", "themselves", "what", "which",
        "who", "whom", "this", "that", "these", "those", "am", "is", "are",
        "was", "were", "be", "been", "being", "have", "has", "had", "having",
        "do", "does", "did", "doing", "would", "should", "could", "ought",
        "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
        "while", "of", "at", "by", "for", "with", "about", "against",
        "between", "into", "through", "during", "before", "after", "above",
        "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
        "under", "again", "further", "then", "once", "here", "there", "when",
        "where", "why", "how", "all", "any", "both", "each", "few", "more",
        "most", "other", "some", "such", "no", "nor", "not", "only", "own",
        "same", "so", "than", "too", "very", "s", "t", "can", "will", "just",
        "don", "now",
    };
    return set;
}

}  // namespace

bool is_stopword(std::string_view word, Language lang) {
    const auto& set = lang == Language::italian ? italian_stopwords() : english_stopwords();
    return set.count(word) > 0;
}

}  // namespace tfmn

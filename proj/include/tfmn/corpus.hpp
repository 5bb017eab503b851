#ifndef TFMN_CORPUS_HPP
#define TFMN_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfmn/core.hpp"
#include "tfmn/date.hpp"
#include "tfmn/stemmer.hpp"

namespace tfmn {

enum class OutletClass { mainstream, alternative };

OutletClass parse_outlet_class(std::string_view name);
const char* outlet_class_name(OutletClass c);

struct Article {
    std::string id;
    std::string url;
    std::string outlet_domain;
    OutletClass outlet_class = OutletClass::mainstream;
    Date date;
    std::string title;
    std::string body;
    int64_t shares_twitter = 0;
    int64_t shares_facebook = 0;
};

// Which text of an article an operation looks at. "both" doubles as the
// filter spelling "either": a keyword filter accepts a match in either text,
// a profile build concatenates the two texts.
enum class TextField { title, body, both };

TextField parse_text_field(std::string_view name);
const char* text_field_name(TextField f);

struct DateRange {
    std::optional<Date> start;  // inclusive
    std::optional<Date> end;    // inclusive

    bool contains(Date d) const {
        if (start && d < *start) return false;
        if (end && *end < d) return false;
        return true;
    }
};

// Immutable, iteration order ascending by (date, id).
class ArticleSet {
public:
    ArticleSet() = default;

    // Sorts, validates id uniqueness, share signs, and window containment.
    static ArticleSet from_records(std::vector<Article> records,
                                   std::optional<DateRange> window = std::nullopt);

    const std::vector<Article>& articles() const { return articles_; }
    size_t size() const { return articles_.size(); }
    bool empty() const { return articles_.empty(); }
    auto begin() const { return articles_.begin(); }
    auto end() const { return articles_.end(); }

    const std::optional<DateRange>& window() const { return window_; }

    // The configured window, or [min date, max date] of the set when unset.
    DateRange observation_window() const;

    size_t count_class(OutletClass c) const;

private:
    std::vector<Article> articles_;
    std::optional<DateRange> window_;
};

enum class CorpusFormat { jsonl, csv };

ArticleSet ingest_articles(const std::string& path, CorpusFormat format);

std::string to_jsonl(const ArticleSet& set);
std::string to_csv(const ArticleSet& set);

// True iff any token of text stems to a form equal to, or prefixed by,
// target (which must already be a stem).
bool match_keyword(std::string_view text, std::string_view target, Language lang);

bool article_mentions(const Article& a, std::string_view target, TextField field, Language lang);

struct ArticleFilter {
    std::optional<std::string> keyword;  // stem
    TextField field = TextField::both;
    std::optional<DateRange> dates;
    std::optional<OutletClass> outlet;
    Language language = Language::italian;
};

// Conjunctive subset, order preserved; the window of the result is the
// filter's date range when given, else the input's.
ArticleSet filter_articles(const ArticleSet& set, const ArticleFilter& filter);

}  // namespace tfmn

#endif

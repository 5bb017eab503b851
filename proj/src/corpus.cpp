#include "tfmn/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"
#include "tfmn/core.hpp"
#include "tfmn/csv.hpp"
#include "tfmn/textutil.hpp"

namespace tfmn {

using nlohmann::json;

OutletClass parse_outlet_class(std::string_view name) {
    if (name == "mainstream") return OutletClass::mainstream;
    if (name == "alternative") return OutletClass::alternative;
    throw ValidationError("unknown outlet_class \"" + std::string(name) + "\"");
}

const char* outlet_class_name(OutletClass c) {
    return c == OutletClass::mainstream ? "mainstream" : "alternative";
}

TextField parse_text_field(std::string_view name) {
    if (name == "title") return TextField::title;
    if (name == "body") return TextField::body;
    if (name == "both" || name == "either") return TextField::both;
    throw ValidationError("unknown field \"" + std::string(name) +
                          "\" (expected title, body, or both/either)");
}

const char* text_field_name(TextField f) {
    switch (f) {
        case TextField::title: return "title";
        case TextField::body: return "body";
        case TextField::both: return "both";
    }
    return "both";
}

ArticleSet ArticleSet::from_records(std::vector<Article> records,
                                    std::optional<DateRange> window) {
    std::stable_sort(records.begin(), records.end(), [](const Article& a, const Article& b) {
        if (a.date != b.date) return a.date < b.date;
        return a.id < b.id;
    });
    std::unordered_set<std::string> ids;
    ids.reserve(records.size());
    for (const Article& a : records) {
        if (!ids.insert(a.id).second) {
            throw ValidationError("duplicate article id \"" + a.id + "\"");
        }
        if (a.shares_twitter < 0 || a.shares_facebook < 0) {
            throw ValidationError("negative share count on article \"" + a.id + "\"");
        }
        if (window && !window->contains(a.date)) {
            throw ValidationError("article \"" + a.id + "\" dated " + format_date(a.date) +
                                  " falls outside the observation window");
        }
    }
    ArticleSet set;
    set.articles_ = std::move(records);
    set.window_ = window;
    return set;
}

DateRange ArticleSet::observation_window() const {
    if (window_) return *window_;
    if (articles_.empty()) return {};
    return DateRange{articles_.front().date, articles_.back().date};
}

size_t ArticleSet::count_class(OutletClass c) const {
    return static_cast<size_t>(std::count_if(
        articles_.begin(), articles_.end(),
        [c](const Article& a) { return a.outlet_class == c; }));
}

namespace {

int64_t require_count(const json& j, const char* key, int line) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
        throw ValidationError("line " + std::to_string(line) + ": missing or non-integer \"" +
                              key + "\"");
    }
    return it->get<int64_t>();
}

std::string require_string(const json& j, const char* key, int line) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
        throw ValidationError("line " + std::to_string(line) + ": missing or non-string \"" +
                              key + "\"");
    }
    return it->get<std::string>();
}

Article article_from_json(const json& j, int line) {
    Article a;
    a.id = require_string(j, "id", line);
    a.url = require_string(j, "url", line);
    a.outlet_domain = require_string(j, "outlet_domain", line);
    try {
        a.outlet_class = parse_outlet_class(require_string(j, "outlet_class", line));
        a.date = parse_date(require_string(j, "date", line));
    } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
    a.title = require_string(j, "title", line);
    a.body = require_string(j, "body", line);
    a.shares_twitter = require_count(j, "shares_twitter", line);
    a.shares_facebook = require_count(j, "shares_facebook", line);
    return a;
}

std::vector<Article> parse_jsonl(const std::string& text) {
    std::vector<Article> records;
    size_t pos = 0;
    int line = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        ++line;
        std::string_view raw(text.data() + pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        pos = nl + 1;
        const size_t first = raw.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (raw[first] == '#') continue;  // metadata/comment line
        json j = json::parse(raw, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw ValidationError("line " + std::to_string(line) + ": malformed json record");
        }
        records.push_back(article_from_json(j, line));
    }
    return records;
}

constexpr const char* kCsvColumns[] = {"id",    "url",  "outlet_domain",
                                       "outlet_class", "date", "title",
                                       "body",  "shares_twitter", "shares_facebook"};

int64_t parse_count(const std::string& text, const char* key, int line) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw ValidationError("line " + std::to_string(line) + ": non-integer \"" +
                              key + "\" value \"" + text + "\"");
    }
    return std::stoll(text);
}

std::vector<Article> parse_corpus_csv(const std::string& text) {
    std::vector<CsvRow> rows = parse_csv(text);
    // Leading metadata/comment lines (single field starting with '#') sit
    // above the header; line numbers of the remaining rows are unaffected.
    size_t skip = 0;
    while (skip < rows.size() && rows[skip].fields.size() == 1 &&
           !rows[skip].fields[0].empty() && rows[skip].fields[0][0] == '#')
        ++skip;
    rows.erase(rows.begin(), rows.begin() + static_cast<ptrdiff_t>(skip));
    if (rows.empty()) throw ValidationError("csv corpus is empty (header row required)");
    const auto& header = rows.front().fields;
    std::vector<size_t> col;
    for (const char* name : kCsvColumns) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ValidationError(std::string("csv header is missing column \"") + name + "\"");
        }
        col.push_back(static_cast<size_t>(it - header.begin()));
    }
    std::vector<Article> records;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != header.size()) {
            throw ValidationError("line " + std::to_string(row.line) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(row.fields.size()));
        }
        Article a;
        a.id = row.fields[col[0]];
        a.url = row.fields[col[1]];
        a.outlet_domain = row.fields[col[2]];
        try {
            a.outlet_class = parse_outlet_class(row.fields[col[3]]);
            a.date = parse_date(row.fields[col[4]]);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(row.line) + ": " + e.what());
        }
        a.title = row.fields[col[5]];
        a.body = row.fields[col[6]];
        a.shares_twitter = parse_count(row.fields[col[7]], "shares_twitter", row.line);
        a.shares_facebook = parse_count(row.fields[col[8]], "shares_facebook", row.line);
        records.push_back(std::move(a));
    }
    return records;
}

}  // namespace

ArticleSet ingest_articles(const std::string& path, CorpusFormat format) {
    const std::string text = read_file(path);
    std::vector<Article> records =
        format == CorpusFormat::jsonl ? parse_jsonl(text) : parse_corpus_csv(text);
    return ArticleSet::from_records(std::move(records));
}

std::string to_jsonl(const ArticleSet& set) {
    std::string out;
    for (const Article& a : set) {
        json j;
        j["id"] = a.id;
        j["url"] = a.url;
        j["outlet_domain"] = a.outlet_domain;
        j["outlet_class"] = outlet_class_name(a.outlet_class);
        j["date"] = format_date(a.date);
        j["title"] = a.title;
        j["body"] = a.body;
        j["shares_twitter"] = a.shares_twitter;
        j["shares_facebook"] = a.shares_facebook;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string to_csv(const ArticleSet& set) {
    std::string out;
    {
        std::vector<std::string> header(std::begin(kCsvColumns), std::end(kCsvColumns));
        out += csv_join(header);
        out += '\n';
    }
    for (const Article& a : set) {
        out += csv_join({a.id, a.url, a.outlet_domain, outlet_class_name(a.outlet_class),
                         format_date(a.date), a.title, a.body,
                         std::to_string(a.shares_twitter), std::to_string(a.shares_facebook)});
        out += '\n';
    }
    return out;
}

bool match_keyword(std::string_view text, std::string_view target, Language lang) {
    for (const std::string& token : tokenize(text)) {
        const std::string s = stem(token, lang);
        if (s.size() >= target.size() && std::string_view(s).substr(0, target.size()) == target) {
            return true;
        }
    }
    return false;
}

bool article_mentions(const Article& a, std::string_view target, TextField field, Language lang) {
    if (field != TextField::body && match_keyword(a.title, target, lang)) return true;
    if (field != TextField::title && match_keyword(a.body, target, lang)) return true;
    return false;
}

ArticleSet filter_articles(const ArticleSet& set, const ArticleFilter& filter) {
    if (filter.dates && filter.dates->start && filter.dates->end &&
        *filter.dates->end < *filter.dates->start) {
        throw ValidationError("date range start is after its end");
    }
    std::vector<Article> kept;
    for (const Article& a : set) {
        if (filter.dates && !filter.dates->contains(a.date)) continue;
        if (filter.outlet && a.outlet_class != *filter.outlet) continue;
        if (filter.keyword &&
            !article_mentions(a, *filter.keyword, filter.field, filter.language)) {
            continue;
        }
        kept.push_back(a);
    }
    return ArticleSet::from_records(std::move(kept),
                                    filter.dates ? filter.dates : set.window());
}

}  // namespace tfmn

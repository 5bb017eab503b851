#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support/helpers.hpp"
#include "tfmn/cli.hpp"
#include "tfmn/corpus.hpp"
#include "tfmn/csv.hpp"
#include "tfmn/frames.hpp"
#include "tfmn/lexicon.hpp"
#include "tfmn/rng.hpp"
#include "tfmn/stats.hpp"

using namespace tfmn;
using tfmn_test::contains;

namespace {

namespace fs = std::filesystem;

const std::string kFixtures = std::string(TFMN_SOURCE_DIR) + "/tests/fixtures/";
const std::string kData = std::string(TFMN_SOURCE_DIR) + "/data/";

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("tfmn_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const std::string& name = "") const {
        return name.empty() ? path.string() : (path / name).string();
    }
};

int run(std::vector<std::string> args) { return cli::run(args); }

// Base arguments for the small fixture corpus.
std::vector<std::string> with_fixtures(std::vector<std::string> args,
                                       const std::string& out) {
    std::vector<std::string> full = std::move(args);
    full.insert(full.end(), {"--corpus", kFixtures + "corpus_small.jsonl", "--lexicon",
                             kFixtures + "lexicon_small.tsv", "--synonyms",
                             kFixtures + "synonyms_small.tsv", "--out", out});
    return full;
}

// Base arguments for the bundled synthetic corpus.
std::vector<std::string> with_demo(std::vector<std::string> args, const std::string& out) {
    std::vector<std::string> full = std::move(args);
    full.insert(full.end(), {"--corpus", kData + "demo_corpus.jsonl", "--lexicon",
                             kData + "lexicon_it.tsv", "--synonyms",
                             kData + "synonyms_it.tsv", "--field", "title", "--out", out});
    return full;
}

nlohmann::json read_json(const std::string& path) {
    return nlohmann::json::parse(read_file(path));
}

bool is_hex16(const std::string& s) {
    if (s.size() != 16) return false;
    for (char c : s)
        if (!(('0' <= c && c <= '9') || ('a' <= c && c <= 'f'))) return false;
    return true;
}

// Runs the installed binary, capturing stdout (+stderr when merged) and the
// exit code.
std::pair<int, std::string> run_binary(const std::string& args, bool merge_stderr) {
    std::string cmd = std::string(TFMN_BIN) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[512];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> parse_summary(std::string line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    std::map<std::string, std::string> kv;
    size_t pos = 0;
    while (pos < line.size()) {
        size_t sp = line.find(' ', pos);
        if (sp == std::string::npos) sp = line.size();
        std::string token = line.substr(pos, sp - pos);
        size_t eq = token.find('=');
        if (eq != std::string::npos) kv[token.substr(0, eq)] = token.substr(eq + 1);
        pos = sp + 1;
    }
    return kv;
}

}  // namespace

TEST_CASE("argument and validation failures exit 1 and name the input") {
    TempDir tmp("errors");
    CHECK(run({}) == 1);
    CHECK(run({"frobnicate"}) == 1);
    CHECK(run({"profile", "--no-such-flag"}) == 1);

    // Missing or nonexistent inputs.
    CHECK(run({"profile", "--corpus", kFixtures + "corpus_small.jsonl", "--target", "vaccin",
               "--out", tmp.str()}) == 1);  // lexicon path missing entirely
    CHECK(run({"profile", "--corpus", kFixtures + "corpus_small.jsonl", "--lexicon",
               "/nope/lexicon.tsv", "--target", "vaccin", "--out", tmp.str()}) == 1);
    CHECK(run({"profile", "--corpus", "/nope/corpus.jsonl", "--lexicon",
               kFixtures + "lexicon_small.tsv", "--target", "vaccin", "--out", tmp.str()}) ==
          1);

    // Subcommand-specific validations.
    CHECK(run(with_fixtures({"frame"}, tmp.str())) == 1);  // no target
    CHECK(run(with_fixtures({"diff", "--target", "vaccin"}, tmp.str())) == 1);  // no split
    CHECK(run(with_fixtures({"frame", "--target", "vaccin", "--radius", "0"}, tmp.str())) ==
          1);
    CHECK(run(with_fixtures({"frame", "--target", "vaccin", "--mode", "dependency"},
                            tmp.str())) == 1);  // dependency without conll-u
    CHECK(run(with_fixtures({"profile", "--conllu", kFixtures + "sample.conllu", "--target",
                             "vaccin"},
                            tmp.str())) == 1);  // conll-u outside build
    CHECK(run(with_fixtures({"timeline", "--target", "vaccin", "--grouping", "fortnight"},
                            tmp.str())) == 1);
    CHECK(run(with_fixtures({"profile", "--target", "sconosciutissim"}, tmp.str())) ==
          1);  // no article mentions it
}

TEST_CASE("ingest normalizes, embeds metadata, and round-trips") {
    TempDir tmp("ingest");
    REQUIRE(run({"ingest", "--corpus", kFixtures + "corpus_small.jsonl", "--out",
                 tmp.str("j")}) == 0);
    const std::string jsonl = read_file(tmp.str("j") + "/corpus.jsonl");
    CHECK(jsonl.starts_with("# config_hash="));
    ArticleSet again = ingest_articles(tmp.str("j") + "/corpus.jsonl", CorpusFormat::jsonl);
    CHECK(again.size() == 5);

    REQUIRE(run({"ingest", "--corpus", tmp.str("j") + "/corpus.jsonl", "--emit", "csv",
                 "--out", tmp.str("c")}) == 0);
    const std::string csv = read_file(tmp.str("c") + "/corpus.csv");
    CHECK(csv.starts_with("# config_hash="));
    ArticleSet csv_again = ingest_articles(tmp.str("c") + "/corpus.csv", CorpusFormat::csv);
    CHECK(csv_again.size() == 5);
    CHECK(csv_again.articles()[0].id == again.articles()[0].id);

    // Outlet restriction applies before writing.
    REQUIRE(run({"ingest", "--corpus", kFixtures + "corpus_small.jsonl", "--outlet",
                 "alternative", "--out", tmp.str("a")}) == 0);
    ArticleSet alt = ingest_articles(tmp.str("a") + "/corpus.jsonl", CorpusFormat::jsonl);
    CHECK(alt.size() == 2);
    CHECK(run({"ingest", "--corpus", kFixtures + "corpus_small.jsonl", "--emit", "yaml",
               "--out", tmp.str("y")}) == 1);
}

TEST_CASE("frame subcommand writes the documented frame json") {
    TempDir tmp("frame");
    REQUIRE(run(with_fixtures({"frame", "--target", "vaccin", "--field", "title", "--outlet",
                               "mainstream"},
                              tmp.str())) == 0);
    nlohmann::json j = read_json(tmp.str("frame_vaccin.json"));
    CHECK(j["target"] == "vaccin");
    CHECK(j["radius"] == 1);
    CHECK(j["neighbors"].is_array());
    CHECK(!j["neighbors"].empty());
    CHECK(j["subgraph"].is_object());
    CHECK(is_hex16(j["config_hash"].get<std::string>()));
    CHECK(j["seed"] == 1);
}

TEST_CASE("profile embeds the derived task seed and is reproducible") {
    TempDir tmp("profile");
    REQUIRE(run(with_fixtures({"profile", "--target", "vaccin", "--seed", "11"},
                              tmp.str("one"))) == 0);
    nlohmann::json j = read_json(tmp.str("one") + "/profile_vaccin.json");
    CHECK(j["metadata"]["target"] == "vaccin");
    CHECK(j["metadata"]["seed"] ==
          derive_seed(11, "profile:vaccin:all:both"));  // documented derivation
    CHECK(j["seed"] == 11);
    CHECK(j["emotions"].size() == 8);

    REQUIRE(run(with_fixtures({"profile", "--target", "vaccin", "--seed", "11"},
                              tmp.str("two"))) == 0);
    CHECK(read_file(tmp.str("one") + "/profile_vaccin.json") ==
          read_file(tmp.str("two") + "/profile_vaccin.json"));

    // The outlet-restricted run names the file by class.
    REQUIRE(run(with_fixtures({"profile", "--target", "vaccin", "--outlet", "mainstream"},
                              tmp.str("ms"))) == 0);
    nlohmann::json ms = read_json(tmp.str("ms") + "/profile_vaccin_mainstream.json");
    CHECK(ms["metadata"]["seed"] == derive_seed(1, "profile:vaccin:mainstream:both"));
}

TEST_CASE("pipeline and standalone profile agree emotion-for-emotion") {
    TempDir tmp("agree");
    REQUIRE(run(with_demo({"profile", "--target", "vaccin", "--outlet", "mainstream",
                           "--seed", "7"},
                          tmp.str("solo"))) == 0);
    REQUIRE(run(with_demo({"pipeline", "--targets", "vaccin,astrazenec", "--split-date",
                           "2021-03-15", "--seed", "7"},
                          tmp.str("pipe"))) == 0);
    nlohmann::json solo = read_json(tmp.str("solo") + "/profile_vaccin_mainstream.json");
    nlohmann::json pipe = read_json(tmp.str("pipe") + "/profile_vaccin_mainstream.json");
    // Different config hashes (targets/split differ), identical science: the
    // per-task seed derivation shields each task from unrelated settings.
    CHECK(solo["emotions"] == pipe["emotions"]);
    CHECK(solo["metadata"]["seed"] == pipe["metadata"]["seed"]);
    CHECK(solo["config_hash"] != pipe["config_hash"]);
}

TEST_CASE("pipeline writes the full reproduction and reruns byte-identically") {
    TempDir tmp("pipeline");
    std::vector<std::string> args = with_demo({"pipeline", "--targets", "vaccin,astrazenec",
                                               "--split-date", "2021-03-15", "--seed", "7"},
                                              tmp.str("a"));
    REQUIRE(run(args) == 0);

    const std::vector<std::string> expected = {
        "network.json",
        "network_edges.tsv",
        "network_nodes.tsv",
        "communities.tsv",
        "profile_vaccin_mainstream.json",
        "profile_vaccin_alternative.json",
        "profile_astrazenec_mainstream.json",
        "wheel_vaccin_mainstream.svg",
        "wheel_vaccin_alternative.svg",
        "wheel_astrazenec_mainstream.svg",
        "frame_vaccin.json",
        "frame_astrazenec.json",
        "network_vaccin.svg",
        "network_astrazenec.svg",
        "timeline_vaccin.csv",
        "timeline_vaccin.svg",
        "timeline_astrazenec.csv",
        "timeline_astrazenec.svg",
        "prevalence_vaccin_mainstream.csv",
        "prevalence_vaccin_alternative.csv",
        "prevalence_vaccin_all.csv",
        "prevalence_astrazenec_mainstream.csv",
        "prevalence_astrazenec_alternative.csv",
        "prevalence_astrazenec_all.csv",
        "frame_vaccin_before.json",
        "frame_vaccin_after.json",
        "diff_vaccin.json",
        "frame_astrazenec_before.json",
        "frame_astrazenec_after.json",
        "diff_astrazenec.json",
        "correlation.json",
        "heatmap.csv",
        "heatmap.svg",
        "share_summary.csv",
        "share_weeks.csv",
    };
    for (const std::string& name : expected) {
        CAPTURE(name);
        CHECK(fs::exists(tmp.path / "a" / name));
    }
    // No alternative-class astrazenec article exists, so that profile/wheel
    // pair is skipped rather than failing the run.
    CHECK(!fs::exists(tmp.path / "a" / "profile_astrazenec_alternative.json"));
    size_t produced = 0;
    for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
        (void)entry;
        ++produced;
    }
    CHECK(produced == expected.size());

    std::vector<std::string> again = with_demo({"pipeline", "--targets", "vaccin,astrazenec",
                                                "--split-date", "2021-03-15", "--seed", "7"},
                                               tmp.str("b"));
    REQUIRE(run(again) == 0);
    for (const std::string& name : expected) {
        CAPTURE(name);
        CHECK(read_file(tmp.str("a") + "/" + name) == read_file(tmp.str("b") + "/" + name));
    }
}

TEST_CASE("diff on the bundled corpus adds exactly the post-split scare stems") {
    TempDir tmp("diff");
    REQUIRE(run(with_demo({"diff", "--target", "astrazenec", "--split-date", "2021-03-15"},
                          tmp.str())) == 0);
    nlohmann::json j = read_json(tmp.str("diff_astrazenec.json"));
    CHECK(j["added"] == nlohmann::json({"minacc", "pericol", "trombos"}));
    CHECK(j["removed"].empty());
    CHECK(j["split"] == "2021-03-15");
    CHECK(j["degree_before"] == 12);
    CHECK(j["degree_after"] == 15);
    CHECK(j["relative_change"] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("timeline csv carries metadata, persistence, and the documented header") {
    TempDir tmp("timeline");
    REQUIRE(run(with_demo({"timeline", "--target", "vaccin", "--outlet", "mainstream",
                           "--grouping", "week"},
                          tmp.str())) == 0);
    const std::string csv = read_file(tmp.str("timeline_vaccin.csv"));
    CHECK(csv.starts_with("# config_hash="));
    CHECK(contains(csv, "\n# persistent="));
    CHECK(contains(csv, "date,emotion,z_raw,z_rolled,significant"));
    const std::string svg = read_file(tmp.str("timeline_vaccin.svg"));
    CHECK(svg.starts_with("<!-- config_hash="));
}

TEST_CASE("prevalence files equal the library emitter plus the metadata line") {
    TempDir tmp("prevalence");
    REQUIRE(run(with_demo({"prevalence", "--target", "vaccin", "--smooth", "7"},
                          tmp.str())) == 0);
    ArticleSet corpus = ingest_articles(kData + "demo_corpus.jsonl", CorpusFormat::jsonl);
    PrevalenceSeries expected = prevalence_series(corpus, "vaccin", TextField::title,
                                                  OutletClass::mainstream, Language::italian,
                                                  7);
    const std::string written = read_file(tmp.str("prevalence_vaccin_mainstream.csv"));
    const size_t first_newline = written.find('\n');
    CHECK(written.substr(0, 2) == "# ");
    CHECK(written.substr(first_newline + 1) == prevalence_csv(expected));
    CHECK(fs::exists(tmp.path / "prevalence_vaccin_alternative.csv"));
    CHECK(fs::exists(tmp.path / "prevalence_vaccin_all.csv"));
}

TEST_CASE("correlate reports every class and matches the library result") {
    TempDir tmp("correlate");
    REQUIRE(run({"correlate", "--corpus", kData + "demo_corpus.jsonl", "--out", tmp.str()}) ==
            0);
    nlohmann::json j = read_json(tmp.str("correlation.json"));
    REQUIRE(j["correlations"].size() == 3);
    CHECK(j["correlations"][0]["label"] == "all");
    CHECK(j["correlations"][1]["label"] == "mainstream");
    CHECK(j["correlations"][2]["label"] == "alternative");

    ArticleSet corpus = ingest_articles(kData + "demo_corpus.jsonl", CorpusFormat::jsonl);
    std::vector<double> xs, ys;
    for (const Article& a : corpus) {
        xs.push_back(static_cast<double>(a.shares_twitter));
        ys.push_back(static_cast<double>(a.shares_facebook));
    }
    Correlation c = pearson(xs, ys);
    CHECK(j["correlations"][0]["r"] == doctest::Approx(c.r).epsilon(1e-15));
    CHECK(j["correlations"][0]["n"] == c.n);
    for (const char* name : {"heatmap.csv", "heatmap.svg", "share_summary.csv",
                             "share_weeks.csv"})
        CHECK(fs::exists(tmp.path / name));
}

TEST_CASE("build exports the network and supports conll-u dependency input") {
    TempDir tmp("build");
    REQUIRE(run(with_fixtures({"build", "--field", "body"}, tmp.str("art"))) == 0);
    for (const char* name : {"network.json", "network_edges.tsv", "network_nodes.tsv"}) {
        CAPTURE(name);
        CHECK(fs::exists(tmp.path / "art" / name));
    }
    nlohmann::json net = read_json(tmp.str("art") + "/network.json");
    CHECK(is_hex16(net["config_hash"].get<std::string>()));

    REQUIRE(run({"build", "--conllu", kFixtures + "sample.conllu", "--lexicon",
                 kFixtures + "lexicon_small.tsv", "--out", tmp.str("dep")}) == 0);
    nlohmann::json dep = read_json(tmp.str("dep") + "/network.json");
    CHECK(dep["provenance"]["mode"] == "dependency");

    // conll-u input with co-occurrence mode explicitly forced is contradictory.
    CHECK(run({"build", "--conllu", kFixtures + "sample.conllu", "--mode", "cooccurrence",
               "--lexicon", kFixtures + "lexicon_small.tsv", "--out", tmp.str("bad")}) == 1);
}

TEST_CASE("render emits only figures, each with the metadata comment") {
    TempDir tmp("render");
    REQUIRE(run(with_demo({"render", "--target", "vaccin"}, tmp.str())) == 0);
    size_t svgs = 0;
    for (const auto& entry : fs::directory_iterator(tmp.path)) {
        CAPTURE(entry.path().string());
        CHECK(entry.path().extension() == ".svg");
        CHECK(read_file(entry.path().string()).starts_with("<!-- config_hash="));
        ++svgs;
    }
    // wheels (2 classes) + frame network + timeline + heatmap
    CHECK(svgs == 5);
}

TEST_CASE("config file supplies defaults, flags win, env var selects the file") {
    TempDir tmp("config");
    const std::string config_path = tmp.str("run.toml");
    write_file(config_path, "corpus = \"" + kFixtures + "corpus_small.jsonl\"\n" +
                                "lexicon = \"" + kFixtures + "lexicon_small.tsv\"\n" +
                                "targets = \"vaccin\"\n" + "seed = 5\n" + "out = \"" +
                                tmp.str("from_config") + "\"\n");

    REQUIRE(run({"profile", "--config", config_path}) == 0);
    nlohmann::json j = read_json(tmp.str("from_config") + "/profile_vaccin.json");
    CHECK(j["seed"] == 5);

    // A flag overrides the config file value.
    REQUIRE(run({"profile", "--config", config_path, "--seed", "9", "--out",
                 tmp.str("flag_wins")}) == 0);
    nlohmann::json k = read_json(tmp.str("flag_wins") + "/profile_vaccin.json");
    CHECK(k["seed"] == 9);
    CHECK(k["metadata"]["seed"] == derive_seed(9, "profile:vaccin:all:both"));

    // TFMN_CONFIG names the default config file.
    ::setenv("TFMN_CONFIG", config_path.c_str(), 1);
    REQUIRE(run({"profile", "--out", tmp.str("via_env")}) == 0);
    ::unsetenv("TFMN_CONFIG");
    nlohmann::json e = read_json(tmp.str("via_env") + "/profile_vaccin.json");
    CHECK(e["emotions"] == j["emotions"]);

    CHECK(run({"profile", "--config", tmp.str("missing.toml")}) == 1);
}

TEST_CASE("binary prints one machine-readable summary line and errors to stderr") {
    TempDir tmp("binary");
    auto [code, out] = run_binary("profile --corpus " + kFixtures + "corpus_small.jsonl" +
                                      " --lexicon " + kFixtures + "lexicon_small.tsv" +
                                      " --target vaccin --out " + tmp.str("ok"),
                                  false);
    CHECK(code == 0);
    REQUIRE(!out.empty());
    CHECK(out.back() == '\n');
    CHECK(out.find('\n') == out.size() - 1);  // exactly one line
    auto kv = parse_summary(out);
    CHECK(out.starts_with("profile "));
    CHECK(is_hex16(kv["config_hash"]));
    CHECK(kv["seed"] == "1");
    CHECK(kv["targets"] == "vaccin");
    CHECK(kv["files"] == "1");
    CHECK(kv["out"] == tmp.str("ok"));

    auto [bad_code, bad_out] = run_binary("profile --corpus /nope.jsonl --lexicon " +
                                              kFixtures + "lexicon_small.tsv" +
                                              " --target vaccin --out " + tmp.str("no"),
                                          true);
    CHECK(bad_code == 1);
    CHECK(contains(bad_out, "/nope.jsonl"));

    auto [quiet_code, quiet_out] = run_binary("frobnicate", false);
    CHECK(quiet_code == 1);
    CHECK(quiet_out.empty());  // usage errors go to stderr only

    auto [help_code, help_out] = run_binary("--help", false);
    CHECK(help_code == 0);
    CHECK(contains(help_out, "pipeline"));
}

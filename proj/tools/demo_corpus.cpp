// Writes the synthetic demo corpus as JSONL.
//   demo_corpus <lexicon.tsv> [seed] > corpus.jsonl
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "tfmn/demo.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <lexicon.tsv> [seed]\n", argv[0]);
        return 1;
    }
    try {
        const tfmn::EmotionLexicon lex =
            tfmn::load_emotion_lexicon(argv[1], tfmn::Language::italian);
        tfmn::DemoSpec spec;
        if (argc > 2) spec.seed = std::strtoull(argv[2], nullptr, 10);
        std::cout << tfmn::to_jsonl(tfmn::synthetic_corpus(lex, spec));
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

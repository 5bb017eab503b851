// Prints word<TAB>stem for each stdin line; -e selects English.
#include <iostream>
#include <string>

#include "tfmn/stemmer.hpp"

int main(int argc, char** argv) {
    tfmn::Language lang = tfmn::Language::italian;
    if (argc > 1 && std::string(argv[1]) == "-e") lang = tfmn::Language::english;
    std::string word;
    while (std::getline(std::cin, word)) {
        if (word.empty()) continue;
        std::cout << word << '\t' << tfmn::stem(word, lang) << '\n';
    }
    return 0;
}

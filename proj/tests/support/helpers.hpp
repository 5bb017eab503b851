#ifndef TFMN_TEST_HELPERS_HPP
#define TFMN_TEST_HELPERS_HPP

#include <exception>
#include <string>

namespace tfmn_test {

// Runs fn, returning the exception message (empty when nothing throws).
template <typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

inline bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace tfmn_test

#endif

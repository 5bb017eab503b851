#ifndef TFMN_CORE_HPP
#define TFMN_CORE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tfmn {

// Two-sided 5% normal threshold. Single significance constant for the whole
// toolkit; nothing else hard-codes 1.96.
inline constexpr double kSignificanceZ = 1.96;

// Input/config problems detected before or while validating a run (CLI exit 1).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failures while executing an otherwise valid run (CLI exit 2).
class RuntimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical wheel cycle; adjacent emotions sit 45 degrees apart on the wheel
// and every array in the toolkit is indexed in this order.
enum class Emotion : uint8_t {
    joy = 0,
    trust,
    fear,
    surprise,
    sadness,
    disgust,
    anger,
    anticipation,
};

inline constexpr int kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kEmotions = {
    Emotion::joy,      Emotion::trust,   Emotion::fear,  Emotion::surprise,
    Emotion::sadness,  Emotion::disgust, Emotion::anger, Emotion::anticipation,
};

std::string_view emotion_name(Emotion e);

// Parses one of the 8 canonical names. Throws ValidationError otherwise.
Emotion parse_emotion(std::string_view name);

// Bitmask over the 8 emotions.
class EmotionSet {
public:
    constexpr EmotionSet() = default;

    constexpr void add(Emotion e) { bits_ |= mask(e); }
    constexpr void remove(Emotion e) { bits_ &= static_cast<uint8_t>(~mask(e)); }
    [[nodiscard]] constexpr bool contains(Emotion e) const { return (bits_ & mask(e)) != 0; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const { return __builtin_popcount(bits_); }
    [[nodiscard]] constexpr uint8_t raw() const { return bits_; }

    constexpr EmotionSet& operator|=(EmotionSet other) {
        bits_ |= other.bits_;
        return *this;
    }
    friend constexpr bool operator==(EmotionSet a, EmotionSet b) = default;

    // "joy,fear" in canonical order; empty string for the empty set.
    [[nodiscard]] std::string to_string() const;

private:
    static constexpr uint8_t mask(Emotion e) { return static_cast<uint8_t>(1u << static_cast<uint8_t>(e)); }
    uint8_t bits_ = 0;
};

}  // namespace tfmn

#endif

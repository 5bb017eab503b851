#include "tfmn/core.hpp"

namespace tfmn {

std::string_view emotion_name(Emotion e) {
    switch (e) {
        case Emotion::joy: return "joy";
        case Emotion::trust: return "trust";
        case Emotion::fear: return "fear";
        case Emotion::surprise: return "surprise";
        case Emotion::sadness: return "sadness";
        case Emotion::disgust: return "disgust";
        case Emotion::anger: return "anger";
        case Emotion::anticipation: return "anticipation";
    }
    throw RuntimeError("invalid emotion value");
}

Emotion parse_emotion(std::string_view name) {
    for (Emotion e : kEmotions) {
        if (emotion_name(e) == name) return e;
    }
    throw ValidationError("unknown emotion: " + std::string(name));
}

std::string EmotionSet::to_string() const {
    std::string out;
    for (Emotion e : kEmotions) {
        if (!contains(e)) continue;
        if (!out.empty()) out += ',';
        out += emotion_name(e);
    }
    return out;
}

}  // namespace tfmn

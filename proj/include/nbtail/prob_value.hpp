#pragma once

namespace nbtail {

/// Which evaluation route produced a probability.
enum class EvalPath { direct_sum, incomplete_beta };

inline const char* to_string(EvalPath path) {
    return path == EvalPath::direct_sum ? "direct-sum" : "incomplete-beta";
}

/// A probability in [0,1] tagged with the route that computed it.
struct ProbValue {
    double value = 0.0;
    EvalPath path = EvalPath::direct_sum;
};

}  // namespace nbtail

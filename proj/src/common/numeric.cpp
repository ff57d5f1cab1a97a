#include "afc/common/numeric.hpp"

namespace afc {

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t block = 32;
    if (values.size() <= block) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace afc

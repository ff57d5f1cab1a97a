#pragma once

#include <cstddef>
#include <span>

namespace afc {

/// Pairwise summation; the result depends only on the input order, never on
/// thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace afc

#ifndef SEMGP_COMMON_HPP
#define SEMGP_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace semgp {

using Rng = std::mt19937_64;

// Outputs of a program on each fitness case, in dataset order.
using Semantics = std::vector<double>;

// Minimization-form objectives. Entries 0 and 1 are (1 - TPR, 1 - TNR);
// a third entry is appended when the semantic criterion is optimized.
using ObjectiveVector = std::vector<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Uniform index in [0, n).
inline auto uniform_index(Rng& rng, std::size_t n) -> std::size_t
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline auto uniform01(Rng& rng) -> double
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace semgp

#endif

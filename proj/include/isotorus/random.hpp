#ifndef ISOTORUS_RANDOM_HPP
#define ISOTORUS_RANDOM_HPP

// splitmix64: state += 0x9E3779B97F4A7C15, then
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z ^ (z >> 31)
// Doubles in [0, 1) take the top 53 bits.

#include <complex>
#include <cstdint>

namespace isotorus
{

class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::complex<double> complex_in(double re_lo, double re_hi, double im_lo, double im_hi)
    {
        const double re = uniform(re_lo, re_hi);
        return {re, uniform(im_lo, im_hi)};
    }

private:
    std::uint64_t state_;
};

} // namespace isotorus

#endif // ISOTORUS_RANDOM_HPP

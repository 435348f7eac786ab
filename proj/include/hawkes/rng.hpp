#pragma once
#include <cmath>
#include <cstdint>

namespace hawkes {

// Counter-based splittable RNG built on the splitmix64 mixing function.
// A stream is identified by (seed, stream_id); replica k of an experiment
// always draws from stream k regardless of which thread runs it, so results
// do not depend on the thread count.
namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}

class RngStream {
  public:
    RngStream() : state_(0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : state_(detail::mix64(seed ^ 0x7f4a7c15ULL) ^ detail::mix64(stream_id * 0xda942042e4dd58b5ULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on (0,1): never returns 0 or 1
    double uniform() {
        const std::uint64_t u = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(u) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cache_ = r * std::sin(a);
        have_cache_ = true;
        return r * std::cos(a);
    }

    // Product-form inversion; lambda is chunked so exp(-lambda) never
    // underflows.  Deterministic draw count is not needed, only stream
    // determinism.
    std::uint64_t poisson(double lambda) {
        std::uint64_t total = 0;
        while (lambda > 50.0) {
            total += poisson_small(50.0);
            lambda -= 50.0;
        }
        return total + poisson_small(lambda);
    }

  private:
    std::uint64_t poisson_small(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    std::uint64_t state_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

}

#pragma once

#include <cstdint>
#include <random>

namespace smb {

/// splitmix64 finalizer; used to derive independent per-path seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: path i of a run seeded with `master` gets
/// its own stream regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t path_index) {
    return mix64(master ^ mix64(path_index + 1));
}

/// Owned Gaussian stream.  One per trajectory; never shared between threads.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() { return normal_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace smb

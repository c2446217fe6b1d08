#ifndef TGD_RANDOM_HPP
#define TGD_RANDOM_HPP

#include <cstdint>
#include <random>

namespace tgd {

// Seed wrapper. Identical seed + identical call sequence gives an
// identical stream on every platform (we bypass std::uniform_real_distribution,
// whose output is implementation-defined).
struct RngSeed {
  std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed derivation: independent streams per (cell, replicate)
// without a shared generator, so replicates can run in any order.
inline RngSeed derive_seed(RngSeed master, std::uint64_t cell, std::uint64_t replicate) {
  std::uint64_t h = splitmix64(master.value ^ (cell * 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (replicate * 0xbf58476d1ce4e5b9ULL));
  return RngSeed{h};
}

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tgd

#endif

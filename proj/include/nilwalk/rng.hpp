#ifndef NILWALK_RNG_HPP
#define NILWALK_RNG_HPP

#include <cstdint>

namespace nilwalk {

// splitmix64: used both as a stream-derivation mixer and to seed xoshiro state.
inline uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman/Vigna, public domain). One instance per logical
// stream; streams are derived from (master seed, stream id), which makes
// results independent of how samples are partitioned across workers.
class Xoshiro256pp {
  public:
    Xoshiro256pp(uint64_t master_seed, uint64_t stream_id) {
        uint64_t x = master_seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL);
        for (auto& w : s_) w = splitmix64(x);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform double in [0,1), 53 bits
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), n >= 1, unbiased (rejection)
    uint64_t next_below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace nilwalk

#endif

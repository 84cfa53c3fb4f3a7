#include "tabp/rng.hpp"

namespace tabp {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomSource RandomSource::for_replicate(std::uint64_t master, std::uint64_t index) {
    return RandomSource{mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

}  // namespace tabp

#include "extinction_lab/random.hpp"

#include <cmath>

namespace extinction_lab {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : engine_(derive_stream_seed(master_seed, stream_index)) {}

double RandomStream::exponential(double rate) {
  return -std::log(uniform_open()) / rate;
}

}  // namespace extinction_lab

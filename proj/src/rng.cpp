#include "qsd/rng.hpp"

namespace qsd {

std::uint64_t derive_seed(std::uint64_t base, std::string_view task,
                          std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (const char c : task) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= base;
  h += index * 0x9e3779b97f4a7c15ull;
  // splitmix64 finalizer
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

}  // namespace qsd

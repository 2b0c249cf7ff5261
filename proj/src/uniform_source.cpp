#include "fracmc/uniform_source.hpp"

namespace fracmc {
namespace {

void append_word(std::vector<std::uint32_t>& key, std::uint64_t value) {
    key.push_back(static_cast<std::uint32_t>(value & 0xffffffffu));
    key.push_back(static_cast<std::uint32_t>(value >> 32));
}

}  // namespace

UniformSource::UniformSource(std::uint64_t seed, std::uint64_t stream) : seed_(seed) {
    append_word(key_, seed);
    append_word(key_, stream);
    std::seed_seq seq(key_.begin(), key_.end());
    engine_.seed(seq);
}

UniformSource::UniformSource(std::uint64_t seed, std::vector<std::uint32_t> key)
    : seed_(seed), key_(std::move(key)) {
    std::seed_seq seq(key_.begin(), key_.end());
    engine_.seed(seq);
}

UniformSource UniformSource::fork(std::uint64_t lane) const {
    auto key = key_;
    append_word(key, lane);
    return UniformSource(seed_, std::move(key));
}

}  // namespace fracmc

#include "ahp/core/random_index.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

#include "ahp/core/consistency.hpp"
#include "ahp/core/judgment_matrix.hpp"
#include "ahp/core/weights.hpp"
#include "ahp/error.hpp"

namespace ahp {

namespace {

constexpr std::size_t kPartitions = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// std::uniform_int_distribution is implementation-defined; rejection keeps
// the draw identical across standard libraries.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

double partition_ci_sum(std::size_t order, std::size_t begin, std::size_t end,
                        std::uint64_t partition_seed) {
  const auto& scale = saaty_scale();
  std::mt19937_64 rng(partition_seed);
  std::vector<double> entries(order * order, 1.0);
  double sum = 0;
  for (std::size_t s = begin; s < end; ++s) {
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = i + 1; j < order; ++j) {
        const double v = scale[draw_index(rng, scale.size())];
        entries[i * order + j] = v;
        entries[j * order + i] = 1.0 / v;
      }
    }
    const auto matrix = validate_matrix(order, entries, ScaleMode::strict_scale);
    const double mu = max_eigenvalue(matrix, geometric_mean_weights(matrix));
    sum += (mu - static_cast<double>(order)) / static_cast<double>(order - 1);
  }
  return sum;
}

}  // namespace

double simulate_ri(std::size_t order, std::size_t samples, std::uint64_t seed,
                   unsigned threads) {
  if (order < 3)
    throw Error(ErrorCode::OrderTooSmall, "random index simulation needs order >= 3");
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");

  const std::size_t partitions = std::min(kPartitions, samples);
  std::vector<double> sums(partitions, 0.0);
  auto run = [&](std::size_t p) {
    const std::size_t begin = samples * p / partitions;
    const std::size_t end = samples * (p + 1) / partitions;
    sums[p] = partition_ci_sum(order, begin, end, splitmix64(seed ^ splitmix64(p)));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, partitions));
  if (threads <= 1) {
    for (std::size_t p = 0; p < partitions; ++p) run(p);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t p = t; p < partitions; p += threads) run(p);
      });
    }
  }

  double total = 0;
  for (double s : sums) total += s;
  return total / static_cast<double>(samples);
}

}  // namespace ahp

#include <benchmark/benchmark.h>

#include <random>

#include "boostlet/harness.hpp"
#include "boostlet/pixel.hpp"
#include "boostlet/png.hpp"

namespace {

using namespace boostlet;

PixelBuffer noise(int w, int h, int channels, unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * channels);
  for (auto& v : data) v = static_cast<std::uint8_t>(rng());
  return PixelBuffer(w, h, channels, std::move(data));
}

void BM_Filter(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int side = static_cast<int>(state.range(1));
  const auto img = noise(side, side, 4);
  const Kernel kernel(size, std::vector<double>(static_cast<std::size_t>(size * size),
                                                1.0 / (size * size)));
  for (auto _ : state) benchmark::DoNotOptimize(filter(img, kernel));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Filter)->Args({3, 512})->Args({5, 512})->Args({3, 2048});

void BM_Sobel(benchmark::State& state) {
  const auto img = noise(512, 512, 4);
  const Kernel kernel = Kernel::sobel_x();
  for (auto _ : state) benchmark::DoNotOptimize(filter(img, kernel));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_Sobel);

void BM_Grayscale(benchmark::State& state) {
  const auto img = noise(1024, 1024, 4);
  for (auto _ : state) benchmark::DoNotOptimize(rgba_to_grayscale(img));
  state.SetItemsProcessed(state.iterations() * 1024 * 1024);
}
BENCHMARK(BM_Grayscale);

void BM_PngEncode(benchmark::State& state) {
  const auto img = noise(512, 512, 4);
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(img));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.data().size()));
}
BENCHMARK(BM_PngEncode);

void BM_PngDecode(benchmark::State& state) {
  const auto encoded = encode_png(noise(512, 512, 4));
  for (auto _ : state) benchmark::DoNotOptimize(decode_png(encoded));
  state.SetBytesProcessed(state.iterations() * 512 * 512 * 4);
}
BENCHMARK(BM_PngDecode);

void BM_Diff(benchmark::State& state) {
  const auto a = noise(1024, 1024, 4, 1);
  const auto b = noise(1024, 1024, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(diff(a, b, 2));
  state.SetItemsProcessed(state.iterations() * 1024 * 1024);
}
BENCHMARK(BM_Diff);

}  // namespace

BENCHMARK_MAIN();

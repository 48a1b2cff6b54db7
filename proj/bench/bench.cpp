// Serial reference vs OpenMP kernel timings.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "mss/algebra.hpp"
#include "mss/exec.hpp"
#include "mss/f2.hpp"
#include "mss/milnor.hpp"
#include "mss/orbit.hpp"
#include "mss/spectral.hpp"

using namespace mss;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void line(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4f s %10.4f s %7.2fx\n", name, serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  std::printf("threads: %d\n%-34s %12s %12s %8s\n", max_threads(), "kernel", "serial", "parallel", "speedup");

  std::mt19937_64 rng(7);
  BitMatrix m(1200, 1200);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (rng() % 2) m.set(r, c);
    }
  }
  line("row_reduce 1200x1200", seconds([&] { row_reduce_serial(m); }, 3),
       seconds([&] { row_reduce(m, Exec::parallel); }, 3));

  const auto cx = milnor_presentation({Flavor::complex, 9, 9});
  line("quotient ring CH_{9,9}", seconds([&] { QuotientRing(cx, 36, Exec::serial); }, 3),
       seconds([&] { QuotientRing(cx, 36, Exec::parallel); }, 3));

  RunOptions serial, parallel;
  serial.exec = Exec::serial;
  parallel.exec = Exec::parallel;
  const auto p = milnor_presentation({Flavor::complex, 9, 7});
  const auto spec = named_case(p, "iii");
  line("spectral run CH_{9,7}", seconds([&] { run_borel_ss(BaseRing::of(Group::z2), p, spec, 30, serial); }, 1),
       seconds([&] { run_borel_ss(BaseRing::of(Group::z2), p, spec, 30, parallel); }, 1));

  const OrbitShape shape{Group::z2, Flavor::complex, 7, 5};
  line("orbit search Z2 complex (7,5)", seconds([&] { verify_orbit_dims_serial(shape); }, 1),
       seconds([&] { verify_orbit_dims(shape, std::nullopt, Exec::parallel); }, 1));
  return 0;
}

#pragma once

#include <cstdint>

namespace shrinkage {

// Counter-based uniform generator (Philox 4x64, 10 rounds).
//
// A stream is identified by (seed, stream_id); the key is fixed and output
// block k is a pure function of the counter, so replication r / task t can
// be handed stream_id = f(r, t) and produce the same draws no matter which
// thread runs it or in what order streams are created.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double u01();

  // Standard normal via Box-Muller; one spare value is buffered in-stream.
  double normal();

  double exponential(double rate);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  std::uint64_t buf_[4];
  int pos_;
  double spare_normal_;
  bool have_spare_;
};

}  // namespace shrinkage

#pragma once

// Shared helpers for the test binaries: reproducible pseudo-random sample
// sets and self-deleting scratch files for the empirical-model loaders.

#include <sys/types.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

// n ascending draws from an Exponential(mean = scale) law via the inverse
// transform on a fixed-seed mt19937, so every run sees identical samples.
inline std::vector<double> exp_like_samples(int n, unsigned seed, double scale = 2.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = -scale * std::log1p(-unif(gen));
    std::sort(xs.begin(), xs.end());
    return xs;
}

// Writes `contents` to a fresh file in the working directory and removes it
// on destruction.  Names carry the pid plus a counter so concurrently
// running test binaries never collide.
class ScratchFile {
  public:
    explicit ScratchFile(const std::string& contents, const std::string& suffix = ".txt") {
        static std::atomic<int> counter{0};
        path_ = "wpremium_scratch_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + suffix;
        std::ofstream out(path_, std::ios::binary);
        out << contents;
    }
    ScratchFile(const ScratchFile&) = delete;
    ScratchFile& operator=(const ScratchFile&) = delete;
    ~ScratchFile() { std::remove(path_.c_str()); }

    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

// One positive decimal per line, the format load_empirical_samples reads.
inline std::string sample_file_text(const std::vector<double>& xs) {
    std::string text;
    char buf[64];
    for (double x : xs) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        text += buf;
    }
    return text;
}

}  // namespace testsupport

#pragma once

// Thin FFTW3 layer: aligned storage plus a process-wide plan cache.
//
// Plans are created once per (shape, direction) under a mutex and executed
// with the new-array interface, which FFTW documents as thread-safe. All
// buffers come from fftw_malloc so they share the planner's alignment.

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <new>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace mixsmooth {

template <class T>
struct FftwAllocator {
    using value_type = T;

    FftwAllocator() noexcept = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_alloc();
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

    template <class U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using cplx = std::complex<double>;
using cvec = std::vector<cplx, FftwAllocator<cplx>>;
using rvec = std::vector<double, FftwAllocator<double>>;

enum class FftDirection { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

namespace detail {

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const std::vector<int>& shape, FftDirection dir) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(shape, static_cast<int>(dir));
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int n : shape) total *= static_cast<std::size_t>(n);
        // FFTW_ESTIMATE leaves the arrays untouched and is deterministic across runs.
        auto* buf = fftw_alloc_complex(total);
        fftw_plan plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf,
                                       static_cast<int>(dir), FFTW_ESTIMATE);
        fftw_free(buf);
        plans_.emplace(std::move(key), plan);
        return plan;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

} // namespace detail

/// Unnormalized in-place transform over a row-major array of the given shape.
inline void fft_inplace(cvec& data, const std::vector<int>& shape, FftDirection dir) {
    fftw_plan plan = detail::PlanCache::instance().get(shape, dir);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace mixsmooth

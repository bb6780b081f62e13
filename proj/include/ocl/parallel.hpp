#pragma once

#include <algorithm>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace ocl {

// Runs fn(0..count-1) on up to hardware_concurrency threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
    using R = std::invoke_result_t<Fn, std::size_t>;
    std::vector<R> out;
    out.reserve(count);
    const std::size_t width = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (width == 1) {
        for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
        return out;
    }
    for (std::size_t start = 0; start < count; start += width) {
        std::vector<std::future<R>> batch;
        const std::size_t end = std::min(count, start + width);
        for (std::size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, fn, i));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

}  // namespace ocl

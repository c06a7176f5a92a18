// SPDX-License-Identifier: Apache-2.0
//
// chanlsp — urban radio channel measurement-to-model toolkit
// Copyright (C) 2026 chanlsp contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef chanlsp_parallel_H
#define chanlsp_parallel_H

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace chanlsp
{

// Index-parallel loop over [0, n). Each index writes only its own output
// slot, so results are independent of scheduling; the first exception is
// rethrown on the caller thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn,
                         unsigned max_threads = 0)
{
    unsigned hw = std::thread::hardware_concurrency();
    unsigned nt = max_threads ? max_threads : (hw ? hw : 1);
    if (nt <= 1 || n <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    nt = std::min<std::size_t>(nt, n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back(
            [&]
            {
                while (true)
                {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n)
                        return;
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err)
                            err = std::current_exception();
                        return;
                    }
                }
            });
    for (auto &th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace chanlsp

#endif

#include "xygibbs/detail/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace xygibbs::detail {

unsigned thread_cap() {
    static const unsigned cap = [] {
        const char* env = std::getenv("XYGIBBS_THREADS");
        if (!env) return 1u;
        unsigned v = 1;
        try {
            v = static_cast<unsigned>(std::stoul(env));
        } catch (...) {
            return 1u;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        if (hw > 0 && v > hw) v = hw;
        return v > 0 ? v : 1u;
    }();
    return cap;
}

}  // namespace xygibbs::detail

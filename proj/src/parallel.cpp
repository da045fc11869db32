#include "smolbgk/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace smolbgk {

int worker_threads() {
    const char* env = std::getenv("SMOLBGK_THREADS");
    if (!env) return 1;
    int n = 0;
    const auto [end, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec != std::errc{} || *end != '\0' || n < 1) return 1;
    return n;
}

}  // namespace smolbgk

#include "cantrees/util.hpp"

#include <cstdlib>
#include <thread>

namespace cantrees {

int worker_count() {
    if (const char* env = std::getenv("CANTREES_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256)
            return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace cantrees

#pragma once

#include <vector>

namespace jetweil {

using MultiIndex = std::vector<unsigned>;

inline MultiIndex zero_index(size_t n) { return MultiIndex(n, 0); }

inline unsigned index_total(const MultiIndex& a) {
    unsigned t = 0;
    for (unsigned e : a) t += e;
    return t;
}

}  // namespace jetweil
